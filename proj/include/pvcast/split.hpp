#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "pvcast/align.hpp"
#include "pvcast/error.hpp"

namespace pvcast {

/// Chronological train/test split specification (default 3:1).
struct SplitSpec {
  double train_fraction = 0.75;

  void validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
      throw ConfigError("train_fraction must be in (0,1)");
    }
  }
};

struct SplitResult {
  HourlyBuckets train;
  HourlyBuckets test;
  /// One entry per bucket whose nonempty sample list yielded an empty test
  /// set ("DegenerateSplit"); a warning, never fatal.
  std::vector<std::string> warnings;
};

/**
 * @brief Split each hour bucket chronologically: the first ceil(f*n) samples
 * train, the remainder test. Within a bucket every train time strictly
 * precedes every test time.
 */
inline SplitResult split(const HourlyBuckets& buckets, const SplitSpec& spec) {
  spec.validate();
  SplitResult out;
  for (int hour = 1; hour <= 24; ++hour) {
    const auto& all = buckets.bucket(hour);
    if (all.empty()) continue;
    const auto n_train =
        static_cast<std::size_t>(std::ceil(spec.train_fraction * static_cast<double>(all.size())));
    auto& train = out.train.bucket(hour);
    auto& test = out.test.bucket(hour);
    train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_train));
    test.assign(all.begin() + static_cast<std::ptrdiff_t>(n_train), all.end());
    if (test.empty()) {
      out.warnings.push_back("DegenerateSplit: hour " + std::to_string(hour) + " has " +
                             std::to_string(all.size()) + " sample(s), empty test set");
    }
  }
  return out;
}

}  // namespace pvcast
