#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <unordered_map>
#include <vector>

#include "pvcast/dataset.hpp"
#include "pvcast/error.hpp"
#include "pvcast/types.hpp"

namespace pvcast {

/// Regression samples stratified by local hour of day (1..24).
struct HourlyBuckets {
  std::array<std::vector<AlignedSample>, 24> by_hour;

  std::vector<AlignedSample>& bucket(int hour) { return by_hour.at(hour - 1); }
  const std::vector<AlignedSample>& bucket(int hour) const { return by_hour.at(hour - 1); }

  std::size_t total() const {
    std::size_t n = 0;
    for (const auto& b : by_hour) n += b.size();
    return n;
  }
};

struct AlignmentOptions {
  Variable variable = Variable::irradiance;
  int lag_hours = 24;
  int lead_hours = 18;
};

/// Alignment output plus the bookkeeping needed for count conservation:
/// emitted + skipped == candidate target times.
struct AlignmentResult {
  HourlyBuckets buckets;
  std::size_t candidates = 0;
  std::size_t emitted = 0;
  std::size_t skipped_missing_lag = 0;
  std::size_t skipped_missing_exog = 0;

  std::size_t skipped() const { return skipped_missing_lag + skipped_missing_exog; }
};

/**
 * @brief Join measurement and forecast streams into per-hour regression rows.
 *
 * A row is emitted for every measurement time t where the lagged measurement
 * at t - lag and a forecast with valid_at == t at exactly the requested lead
 * both exist. Times missing either leg are skipped and counted. The result
 * is independent of input record order; buckets come out sorted by valid_at.
 *
 * @throws EmptyAlignmentError when no row can be formed.
 * @throws ConfigError on lead outside 1..18 or lag < 1.
 */
inline AlignmentResult align(const std::map<TimeIndex, WeatherSample>& measurements,
                             const std::vector<ForecastRecord>& forecasts,
                             const AlignmentOptions& opts) {
  if (opts.lead_hours < 1 || opts.lead_hours > ForecastRecord::kMaxLeadHours) {
    throw ConfigError("lead_hours must be in 1..18");
  }
  if (opts.lag_hours < 1) throw ConfigError("lag_hours must be >= 1");

  std::unordered_map<std::int64_t, double> exog_by_valid;
  exog_by_valid.reserve(forecasts.size());
  for (const auto& f : forecasts) {
    if (f.lead_hours == opts.lead_hours) {
      exog_by_valid[f.valid_at.epoch_hour] = f.sample.value(opts.variable);
    }
  }

  AlignmentResult out;
  out.candidates = measurements.size();
  for (const auto& [t, sample] : measurements) {
    auto lag_it = measurements.find(t.plus_hours(-opts.lag_hours));
    if (lag_it == measurements.end()) {
      ++out.skipped_missing_lag;
      continue;
    }
    auto exog_it = exog_by_valid.find(t.epoch_hour);
    if (exog_it == exog_by_valid.end()) {
      ++out.skipped_missing_exog;
      continue;
    }
    AlignedSample row;
    row.hour_of_day = hour_of_day(t);
    row.target = sample.value(opts.variable);
    row.lag = lag_it->second.value(opts.variable);
    row.exog = exog_it->second;
    row.valid_at = t;
    out.buckets.bucket(row.hour_of_day).push_back(row);
    ++out.emitted;
  }

  if (out.emitted == 0) {
    throw EmptyAlignmentError("no aligned sample could be formed (disjoint streams?)");
  }
  return out;
}

inline AlignmentResult align(const Dataset& dataset, const AlignmentOptions& opts) {
  return align(dataset.measurements, dataset.forecasts, opts);
}

}  // namespace pvcast
