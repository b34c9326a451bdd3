#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "pvcast/dataset.hpp"
#include "pvcast/error.hpp"
#include "pvcast/ols.hpp"
#include "pvcast/time_index.hpp"
#include "pvcast/types.hpp"

namespace pvcast {

/**
 * @brief Portable seeded random source.
 *
 * mt19937_64 output is pinned by the standard; the uniform and normal
 * mappings below are implemented here (rather than via std distributions,
 * whose output is implementation-defined) so identical seeds produce
 * identical streams on every platform.
 */
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in (0, 1]: 53-bit mantissa, never exactly zero.
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via the basic Box-Muller form; consumes two uniforms.
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  std::uint64_t next_raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Ground-truth generating coefficients for one (variable, hour) cell.
struct TrueParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double sigma = 0.0;
};

/**
 * @brief Configuration for the seeded synthetic weather generator.
 *
 * The generator builds an hourly site record starting at local midnight of
 * 2018-01-01. Each variable has a latent diurnal "driver" with seeded
 * day-to-day variation; measurements follow the generating recursion
 *
 *   X[i] = alpha_h * X[i-24] + beta_h * D[i] + gamma_h + sigma_h * N(0,1)
 *
 * against the driver D, and the published lead-18 forecast is the driver
 * blended with an independent decoy draw:
 *
 *   F[i] = w * D[i] + (1 - w) * decoy[i],   w = forecast_informativeness.
 *
 * At w = 1 the target therefore satisfies the ARX relation against the
 * published forecast exactly, up to the injected noise sigma. At w = 0 the
 * forecast carries no information about the target. Hours whose irradiance
 * profile is zero (night) are forced to the all-zero generating params, so
 * night irradiance is exactly zero.
 *
 * Draw order is fixed (time-ascending; per hour: daily offsets at local
 * midnight, then irradiance/temperature/wind driver and decoy draws, then
 * the three measurement noises), making output byte-identical per seed.
 */
struct SyntheticConfig {
  int days = 30;
  std::uint64_t seed = 1;
  double forecast_informativeness = 1.0;  // in [0,1]

  // Diurnal profile.
  double peak_irradiance_wm2 = 800.0;
  int sunrise_hour = 7;   // local clock hour; irradiance is 0 at and before it
  int sunset_hour = 20;   // local clock hour; irradiance is 0 at and after it
  double cloud_min = 0.6;  // per-hour multiplicative irradiance factor range
  double cloud_max = 1.0;
  double temperature_mean_k = 288.0;
  double temperature_amplitude_k = 6.0;
  double temperature_daily_sd_k = 4.0;   // day-to-day offset of the driver
  double temperature_jitter_sd_k = 1.0;  // hour-to-hour driver jitter
  double wind_mean_ms = 4.0;
  double wind_sd_ms = 1.5;

  int utc_offset_hours = -8;
  int lag_hours = 24;
  int lead_hours = 18;
  std::string site_id = "synthetic";

  /// Generating parameters per variable and hour (index hour-1).
  std::array<std::array<TrueParams, 24>, 3> true_params = default_true_params();

  static std::array<std::array<TrueParams, 24>, 3> default_true_params() {
    std::array<std::array<TrueParams, 24>, 3> p{};
    for (int h = 0; h < 24; ++h) {
      p[0][h] = {0.15, 0.75, 10.0, 0.0};  // irradiance (day hours; night zeroed on use)
      p[1][h] = {0.35, 0.60, 14.0, 0.0};  // temperature
      p[2][h] = {0.25, 0.60, 0.80, 0.0};  // wind
    }
    return p;
  }

  /// Set one variable's (alpha, beta, gamma) for every hour.
  void set_params(Variable v, double alpha, double beta, double gamma) {
    for (auto& cell : true_params[static_cast<int>(v)]) {
      cell.alpha = alpha;
      cell.beta = beta;
      cell.gamma = gamma;
    }
  }

  /// Set one variable's injected noise level for every hour.
  void set_sigma(Variable v, double sigma) {
    for (auto& cell : true_params[static_cast<int>(v)]) cell.sigma = sigma;
  }

  void validate() const {
    if (days < 2) throw ConfigError("days must be >= 2 (lag needs a prior day)");
    if (forecast_informativeness < 0.0 || forecast_informativeness > 1.0) {
      throw ConfigError("forecast_informativeness must be in [0,1]");
    }
    if (sunrise_hour >= sunset_hour) throw ConfigError("sunrise must precede sunset");
    if (!(peak_irradiance_wm2 > 0.0)) throw ConfigError("peak irradiance must be > 0");
    if (cloud_min > cloud_max || cloud_min < 0.0) throw ConfigError("bad cloud factor range");
    for (const auto& var : true_params) {
      for (const auto& cell : var) {
        if (cell.sigma < 0.0) throw ConfigError("sigma must be >= 0");
      }
    }
  }

  /// Clear-sky irradiance profile at a local clock hour (0..23).
  double irradiance_base(int clock_hour) const {
    if (clock_hour <= sunrise_hour || clock_hour >= sunset_hour) return 0.0;
    const double x = 3.14159265358979323846 *
                     static_cast<double>(clock_hour - sunrise_hour) /
                     static_cast<double>(sunset_hour - sunrise_hour);
    return peak_irradiance_wm2 * std::sin(x);
  }

  bool is_night(int clock_hour) const { return irradiance_base(clock_hour) == 0.0; }

  /// Effective generating parameters: night irradiance is the zero model.
  TrueParams effective_params(Variable v, int clock_hour) const {
    if (v == Variable::irradiance && is_night(clock_hour)) return {0.0, 0.0, 0.0, 0.0};
    return true_params[static_cast<int>(v)][clock_hour];
  }
};

/**
 * @brief Generate a synthetic dataset with known ground truth.
 *
 * Emits a lead-0 record per hour (the measurement stream) and a lead-18
 * record per hour from `lead_hours` onward. Deterministic per seed.
 */
inline Dataset generate(const SyntheticConfig& config) {
  config.validate();
  PortableRng rng(config.seed);

  const int n = config.days * 24;
  // Local midnight of 2018-01-01 at the configured offset.
  const std::int64_t start = epoch_hour_utc(2018, 1, 1, 0) - config.utc_offset_hours;

  std::array<std::vector<double>, 3> driver, decoy, measured;
  for (auto* a : {&driver, &decoy, &measured}) {
    for (auto& v : *a) v.assign(static_cast<std::size_t>(n), 0.0);
  }

  double temp_offset = 0.0, temp_offset_decoy = 0.0;
  for (int i = 0; i < n; ++i) {
    const int clock = i % 24;
    if (clock == 0) {
      temp_offset = rng.normal(0.0, config.temperature_daily_sd_k);
      temp_offset_decoy = rng.normal(0.0, config.temperature_daily_sd_k);
    }

    const double irr_base = config.irradiance_base(clock);
    driver[0][i] = irr_base * rng.uniform(config.cloud_min, config.cloud_max);
    decoy[0][i] = irr_base * rng.uniform(config.cloud_min, config.cloud_max);

    const double diurnal =
        config.temperature_amplitude_k *
        std::sin(2.0 * 3.14159265358979323846 * static_cast<double>(clock - 9) / 24.0);
    driver[1][i] = config.temperature_mean_k + temp_offset + diurnal +
                   rng.normal(0.0, config.temperature_jitter_sd_k);
    decoy[1][i] = config.temperature_mean_k + temp_offset_decoy + diurnal +
                  rng.normal(0.0, config.temperature_jitter_sd_k);

    driver[2][i] = std::max(0.0, rng.normal(config.wind_mean_ms, config.wind_sd_ms));
    decoy[2][i] = std::max(0.0, rng.normal(config.wind_mean_ms, config.wind_sd_ms));

    for (int v = 0; v < 3; ++v) {
      const auto var = static_cast<Variable>(v);
      const TrueParams p = config.effective_params(var, clock);
      double value;
      if (i < config.lag_hours) {
        value = driver[v][i];  // warm-up span: no lag available yet
      } else {
        value = p.alpha * measured[v][i - config.lag_hours] + p.beta * driver[v][i] + p.gamma;
      }
      if (p.sigma > 0.0) value += p.sigma * rng.normal();
      if (var != Variable::temperature) value = std::max(0.0, value);
      measured[v][i] = value;
    }
  }

  const double w = config.forecast_informativeness;
  Dataset out;
  out.site_id = config.site_id;
  out.provenance.push_back("synthetic(seed=" + std::to_string(config.seed) + ")");
  for (int i = 0; i < n; ++i) {
    const TimeIndex t{start + i, config.utc_offset_hours};
    ForecastRecord analysis;
    analysis.issued_at = t;
    analysis.lead_hours = 0;
    analysis.valid_at = t;
    analysis.sample = {measured[0][i], measured[1][i], measured[2][i]};
    out.forecasts.push_back(analysis);
    out.measurements[t] = analysis.sample;

    if (i >= config.lead_hours) {
      ForecastRecord fc;
      fc.issued_at = t.plus_hours(-config.lead_hours);
      fc.lead_hours = config.lead_hours;
      fc.valid_at = t;
      fc.sample = {w * driver[0][i] + (1.0 - w) * decoy[0][i],
                   w * driver[1][i] + (1.0 - w) * decoy[1][i],
                   w * driver[2][i] + (1.0 - w) * decoy[2][i]};
      out.forecasts.push_back(fc);
    }
  }

  std::sort(out.forecasts.begin(), out.forecasts.end(), [](const auto& a, const auto& b) {
    return std::tie(a.issued_at.epoch_hour, a.lead_hours) <
           std::tie(b.issued_at.epoch_hour, b.lead_hours);
  });
  return out;
}

/**
 * @brief Independent least-squares oracle: explicitly formed normal
 * equations solved by Gaussian elimination with partial pivoting.
 *
 * Deliberately a separate code path from fit_ols (no QR, no Eigen); used
 * by the property and acceptance suites to cross-check coefficients.
 *
 * @throws SingularError on a numerically singular normal matrix,
 *         UnderdeterminedError when n < k.
 */
inline std::vector<double> oracle_ols(const std::vector<RegressionRow>& rows) {
  if (rows.empty()) throw UnderdeterminedError("no regression rows");
  const std::size_t k = rows.front().predictors.size();
  if (rows.size() < k) throw UnderdeterminedError("fewer rows than predictors");

  // Normal equations: (X^T X) b = X^T y.
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (const auto& row : rows) {
    if (row.predictors.size() != k) throw UnderdeterminedError("rows have mixed predictor arity");
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) a[i][j] += row.predictors[i] * row.predictors[j];
      a[i][k] += row.predictors[i] * row.target;
    }
  }

  for (std::size_t col = 0; col < k; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < k; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-12) throw SingularError("singular normal matrix");
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= factor * a[col][c];
    }
  }

  std::vector<double> coef(k);
  for (std::size_t i = 0; i < k; ++i) coef[i] = a[i][k] / a[i][i];
  return coef;
}

}  // namespace pvcast
