#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pvcast/align.hpp"
#include "pvcast/error.hpp"
#include "pvcast/model.hpp"

namespace pvcast {

/// Root-mean-square error. @throws LengthMismatchError, EmptyInputError.
inline double rmse(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) {
    throw LengthMismatchError("pred has " + std::to_string(pred.size()) + " values, truth " +
                              std::to_string(truth.size()));
  }
  if (pred.empty()) throw EmptyInputError("rmse of empty series");
  double ss = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred[i] - truth[i];
    ss += e * e;
  }
  return std::sqrt(ss / static_cast<double>(pred.size()));
}

/// Mean absolute error. @throws LengthMismatchError, EmptyInputError.
inline double mae(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) {
    throw LengthMismatchError("pred has " + std::to_string(pred.size()) + " values, truth " +
                              std::to_string(truth.size()));
  }
  if (pred.empty()) throw EmptyInputError("mae of empty series");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) sum += std::abs(pred[i] - truth[i]);
  return sum / static_cast<double>(pred.size());
}

/// Per-hour prediction errors for a fitted model set over test buckets.
/// Hours with no test samples are absent from the maps, never zero.
struct HourlyErrorCurve {
  std::map<int, double> rmse_by_hour;
  std::map<int, double> mae_by_hour;
  std::map<int, std::size_t> n_by_hour;
};

inline HourlyErrorCurve hourly_rmse_curve(const ModelSet& set, const HourlyBuckets& test) {
  HourlyErrorCurve curve;
  for (int hour = 1; hour <= 24; ++hour) {
    const auto& rows = test.bucket(hour);
    if (rows.empty()) continue;
    std::vector<double> pred, truth;
    pred.reserve(rows.size());
    truth.reserve(rows.size());
    for (const auto& r : rows) {
      pred.push_back(predict(set, hour, r.lag, r.exog));
      truth.push_back(r.target);
    }
    curve.rmse_by_hour[hour] = rmse(pred, truth);
    curve.mae_by_hour[hour] = mae(pred, truth);
    curve.n_by_hour[hour] = rows.size();
  }
  return curve;
}

/// Same shape for the raw lead-ated forecast used as the prediction.
inline HourlyErrorCurve hourly_forecast_curve(const HourlyBuckets& test) {
  HourlyErrorCurve curve;
  for (int hour = 1; hour <= 24; ++hour) {
    const auto& rows = test.bucket(hour);
    if (rows.empty()) continue;
    std::vector<double> pred, truth;
    for (const auto& r : rows) {
      pred.push_back(r.exog);
      truth.push_back(r.target);
    }
    curve.rmse_by_hour[hour] = rmse(pred, truth);
    curve.mae_by_hour[hour] = mae(pred, truth);
    curve.n_by_hour[hour] = rows.size();
  }
  return curve;
}

/// How per-hour accuracy denominators are derived from measured truth.
enum class AccuracyPolicy { mean_of_truth, range_of_truth, fixed_capacity };

inline const char* accuracy_policy_name(AccuracyPolicy p) {
  switch (p) {
    case AccuracyPolicy::mean_of_truth:
      return "mean_of_truth";
    case AccuracyPolicy::range_of_truth:
      return "range_of_truth";
    case AccuracyPolicy::fixed_capacity:
      return "fixed_capacity";
  }
  return "?";
}

inline std::optional<AccuracyPolicy> accuracy_policy_from_name(const std::string& name) {
  if (name == "mean_of_truth") return AccuracyPolicy::mean_of_truth;
  if (name == "range_of_truth") return AccuracyPolicy::range_of_truth;
  if (name == "fixed_capacity") return AccuracyPolicy::fixed_capacity;
  return std::nullopt;
}

/**
 * @brief Per-hour normalizers for relative accuracy, from the measured
 * truth in the given buckets.
 *
 * fixed_capacity uses the supplied constant for every populated hour.
 */
inline std::map<int, double> accuracy_denominators(const HourlyBuckets& buckets,
                                                   AccuracyPolicy policy,
                                                   double fixed_capacity = 0.0) {
  std::map<int, double> denom;
  for (int hour = 1; hour <= 24; ++hour) {
    const auto& rows = buckets.bucket(hour);
    if (rows.empty()) continue;
    switch (policy) {
      case AccuracyPolicy::mean_of_truth: {
        double m = 0.0;
        for (const auto& r : rows) m += r.target;
        denom[hour] = m / static_cast<double>(rows.size());
        break;
      }
      case AccuracyPolicy::range_of_truth: {
        double lo = rows.front().target, hi = rows.front().target;
        for (const auto& r : rows) {
          lo = std::min(lo, r.target);
          hi = std::max(hi, r.target);
        }
        denom[hour] = hi - lo;
        break;
      }
      case AccuracyPolicy::fixed_capacity:
        denom[hour] = fixed_capacity;
        break;
    }
  }
  return denom;
}

struct AccuracyResult {
  double overall_pct = 0.0;            // mean over included hours
  std::map<int, double> per_hour_pct;  // clamped to [0,100]
  std::vector<int> excluded_hours;     // denominator at or below epsilon
};

/**
 * @brief Relative percentage accuracy: per hour 100*(1 - rmse/denominator),
 * clamped to [0,100], averaged over hours whose denominator exceeds eps.
 *
 * Hours with near-zero denominators (night irradiance under the mean
 * policy) are excluded and listed. @throws NoValidHoursError when every
 * hour is excluded.
 */
inline AccuracyResult accuracy_pct(const std::map<int, double>& rmse_by_hour,
                                   const std::map<int, double>& denominators,
                                   double eps = 1e-6) {
  AccuracyResult out;
  double sum = 0.0;
  std::size_t included = 0;
  for (const auto& [hour, r] : rmse_by_hour) {
    auto it = denominators.find(hour);
    const double denom = it == denominators.end() ? 0.0 : it->second;
    if (denom <= eps) {
      out.excluded_hours.push_back(hour);
      continue;
    }
    double acc = 100.0 * (1.0 - r / denom);
    acc = std::clamp(acc, 0.0, 100.0);
    out.per_hour_pct[hour] = acc;
    sum += acc;
    ++included;
  }
  if (included == 0) throw NoValidHoursError("every hour excluded by the accuracy normalizer");
  out.overall_pct = sum / static_cast<double>(included);
  return out;
}

/// Uniform-width histogram; bin counts always sum to the sample count.
struct Histogram {
  std::vector<double> edges;       // nbins + 1 edges
  std::vector<std::size_t> count;  // nbins counts
};

inline Histogram histogram(const std::vector<double>& values, std::size_t nbins = 40) {
  if (values.empty()) throw EmptyInputError("histogram of empty series");
  if (nbins == 0) throw ConfigError("histogram needs at least one bin");
  auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  double lo = *lo_it, hi = *hi_it;
  Histogram h;
  h.count.assign(nbins, 0);
  if (lo == hi) {
    // Degenerate range: one bin holds everything.
    h.edges = {lo, hi};
    h.count.assign(1, values.size());
    return h;
  }
  const double width = (hi - lo) / static_cast<double>(nbins);
  for (std::size_t i = 0; i <= nbins; ++i) h.edges.push_back(lo + width * static_cast<double>(i));
  for (double v : values) {
    auto bin = static_cast<std::size_t>((v - lo) / width);
    if (bin >= nbins) bin = nbins - 1;  // right edge lands in the last bin
    ++h.count[bin];
  }
  return h;
}

}  // namespace pvcast
