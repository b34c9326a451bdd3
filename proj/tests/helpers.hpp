#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pvcast/dataset.hpp"
#include "pvcast/time_index.hpp"
#include "pvcast/types.hpp"

namespace testutil {

/// Unique scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("pvcast_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

/// Contiguous hourly measurement plus matching lead-18 forecast records.
/// Values are simple deterministic functions of the hour index.
inline std::vector<pvcast::ForecastRecord> contiguous_records(std::int64_t start_epoch_hour,
                                                              int hours, int utc_offset = 0,
                                                              int lead = 18) {
  std::vector<pvcast::ForecastRecord> records;
  for (int i = 0; i < hours; ++i) {
    pvcast::TimeIndex t{start_epoch_hour + i, utc_offset};
    pvcast::WeatherSample measured{100.0 + i, 280.0 + 0.1 * i, 3.0 + 0.01 * i};
    records.push_back({t, 0, t, measured});
    if (i >= lead) {
      pvcast::WeatherSample fc{110.0 + i, 281.0 + 0.1 * i, 3.5 + 0.01 * i};
      records.push_back({t.plus_hours(-lead), lead, t, fc});
    }
  }
  return records;
}

}  // namespace testutil
