#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pvcast/error.hpp"
#include "pvcast/types.hpp"

namespace pvcast {

/**
 * @brief Assembled measurement and forecast streams for one site.
 *
 * The measurement map is exactly the lead-0 forecast stream; forecasts
 * retain every record (including lead 0) keyed uniquely by
 * (issued_at, lead_hours).
 */
struct Dataset {
  std::string site_id;
  std::map<TimeIndex, WeatherSample> measurements;
  std::vector<ForecastRecord> forecasts;
  std::vector<std::string> provenance;

  bool empty() const { return forecasts.empty(); }

  /// Inclusive valid-time span of the measurement stream.
  std::pair<TimeIndex, TimeIndex> measurement_span() const {
    if (measurements.empty()) return {};
    return {measurements.begin()->first, measurements.rbegin()->first};
  }

  /// Re-stamp the hour-of-day bucketing offset on every time index.
  void set_utc_offset(int offset_hours) {
    std::map<TimeIndex, WeatherSample> rekeyed;
    for (const auto& [t, s] : measurements) {
      rekeyed.emplace(TimeIndex{t.epoch_hour, offset_hours}, s);
    }
    measurements = std::move(rekeyed);
    for (auto& f : forecasts) {
      f.issued_at.utc_offset_hours = offset_hours;
      f.valid_at.utc_offset_hours = offset_hours;
    }
  }
};

/// Result of assembling raw records into a Dataset.
struct DatasetBuild {
  Dataset dataset;
  std::size_t duplicates_dropped = 0;
};

/**
 * @brief Assemble records into a Dataset.
 *
 * Lead-0 records populate the measurement stream; all records are kept as
 * forecasts. Duplicate (issued_at, lead_hours) keys resolve last-write-wins
 * and are counted, not fatal. Output ordering is by (issued_at, lead)
 * regardless of input order.
 *
 * @throws EmptyInputError when no records are given.
 */
inline DatasetBuild build_dataset(const std::vector<ForecastRecord>& records,
                                  std::string site_id = {}) {
  if (records.empty()) throw EmptyInputError("no forecast records to assemble");

  DatasetBuild out;
  out.dataset.site_id = std::move(site_id);

  std::map<std::pair<std::int64_t, int>, ForecastRecord> unique;
  for (const auto& r : records) {
    auto key = std::make_pair(r.issued_at.epoch_hour, r.lead_hours);
    auto [it, inserted] = unique.insert_or_assign(key, r);
    (void)it;
    if (!inserted) ++out.duplicates_dropped;
  }

  out.dataset.forecasts.reserve(unique.size());
  for (const auto& [key, r] : unique) {
    (void)key;
    out.dataset.forecasts.push_back(r);
    if (r.lead_hours == 0) out.dataset.measurements[r.valid_at] = r.sample;
  }
  return out;
}

}  // namespace pvcast
