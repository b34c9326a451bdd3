#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pvcast/error.hpp"

namespace pvcast {

/// One least-squares row: predictor values and the observed target.
struct RegressionRow {
  std::vector<double> predictors;
  double target = 0.0;
};

struct FitDiagnostics {
  std::vector<double> residuals;
  bool condition_warning = false;
  bool degenerate = false;
};

struct OlsFit {
  std::vector<double> coefficients;
  double sigma = 0.0;  // sample standard deviation of residuals
  FitDiagnostics diagnostics;
};

/// Sample standard deviation (n-1 denominator for n > 1, else 0).
inline double sample_std(const std::vector<double>& values) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(n - 1));
}

/**
 * @brief Ordinary least squares via rank-revealing Householder QR.
 *
 * Coefficients minimize the sum of squared residuals. No intercept is
 * added implicitly; callers wanting one pass a constant-1 predictor.
 *
 * @throws UnderdeterminedError when n < k (or no rows).
 * @throws SingularError when the design matrix is rank deficient.
 */
inline OlsFit fit_ols(const std::vector<RegressionRow>& rows) {
  if (rows.empty()) throw UnderdeterminedError("no regression rows");
  const std::size_t k = rows.front().predictors.size();
  if (k == 0) throw UnderdeterminedError("rows have no predictors");
  for (const auto& r : rows) {
    if (r.predictors.size() != k) {
      throw UnderdeterminedError("rows have mixed predictor arity");
    }
  }
  const std::size_t n = rows.size();
  if (n < k) {
    throw UnderdeterminedError("n=" + std::to_string(n) + " rows < k=" + std::to_string(k) +
                               " predictors");
  }

  Eigen::MatrixXd design(n, k);
  Eigen::VectorXd target(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) design(i, j) = rows[i].predictors[j];
    target(i) = rows[i].target;
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(k)) {
    throw SingularError("rank-deficient design matrix (rank " + std::to_string(qr.rank()) +
                        " < " + std::to_string(k) + ")");
  }

  Eigen::VectorXd coef = qr.solve(target);
  Eigen::VectorXd resid = target - design * coef;

  OlsFit fit;
  fit.coefficients.assign(coef.data(), coef.data() + coef.size());
  fit.diagnostics.residuals.assign(resid.data(), resid.data() + resid.size());
  fit.sigma = sample_std(fit.diagnostics.residuals);

  // Crude conditioning probe from the R diagonal.
  const auto& r_diag = qr.matrixR().diagonal();
  double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(k); ++i) {
    double d = std::abs(r_diag(i));
    dmax = std::max(dmax, d);
    dmin = std::min(dmin, d);
  }
  fit.diagnostics.condition_warning = dmin <= 0.0 || dmax / dmin > 1e8;
  return fit;
}

}  // namespace pvcast
