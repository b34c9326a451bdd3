#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <string>

#include "pvcast/error.hpp"

namespace pvcast {

/**
 * @brief Hourly time index: whole hours since the Unix epoch (UTC).
 *
 * Streams are hourly by construction (dt = 3600 s). `utc_offset_hours` is
 * the site-local offset used only for hour-of-day bucketing; it does not
 * participate in ordering or equality.
 */
struct TimeIndex {
  std::int64_t epoch_hour = 0;
  int utc_offset_hours = 0;

  friend bool operator==(const TimeIndex& a, const TimeIndex& b) {
    return a.epoch_hour == b.epoch_hour;
  }
  friend std::strong_ordering operator<=>(const TimeIndex& a, const TimeIndex& b) {
    return a.epoch_hour <=> b.epoch_hour;
  }

  /// Shift by a whole number of hours, keeping the site offset.
  TimeIndex plus_hours(std::int64_t h) const { return {epoch_hour + h, utc_offset_hours}; }
};

/**
 * @brief Local hour-of-day bucket in 1..24.
 *
 * Bucket 1 is the local hour beginning at midnight. Uses floored modular
 * arithmetic so pre-epoch indices bucket correctly.
 */
inline int hour_of_day(const TimeIndex& t) {
  std::int64_t shifted = t.epoch_hour + t.utc_offset_hours;
  std::int64_t m = ((shifted % 24) + 24) % 24;
  return static_cast<int>(m) + 1;
}

namespace detail {

// Days from civil date (proleptic Gregorian), Howard Hinnant's algorithm.
inline std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

inline void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
  m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
  y = static_cast<int>(yr + (m <= 2));
}

}  // namespace detail

/// Epoch hour for a civil UTC instant on an hour boundary.
inline std::int64_t epoch_hour_utc(int year, int month, int day, int hour) {
  return detail::days_from_civil(year, month, day) * 24 + hour;
}

/**
 * @brief Parse a strict ISO-8601 hour timestamp `YYYY-MM-DDTHH:00:00Z`.
 *
 * Minutes and seconds must be zero; anything else is rejected.
 * @throws RowError on malformed input.
 */
inline TimeIndex parse_iso_hour(const std::string& text, int utc_offset_hours = 0) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char tail = '\0';
  if (text.size() != 20 ||
      std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &s, &tail) != 7 ||
      tail != 'Z') {
    throw RowError("bad timestamp '" + text + "' (expected YYYY-MM-DDTHH:00:00Z)");
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || h < 0 || h > 23 || mi != 0 || s != 0) {
    throw RowError("bad timestamp '" + text + "' (must be on an hour boundary)");
  }
  return {epoch_hour_utc(y, mo, d, h), utc_offset_hours};
}

/// Format as `YYYY-MM-DDTHH:00:00Z` (inverse of parse_iso_hour).
inline std::string format_iso_hour(const TimeIndex& t) {
  std::int64_t days = t.epoch_hour / 24;
  int h = static_cast<int>(t.epoch_hour % 24);
  if (h < 0) {
    h += 24;
    --days;
  }
  int y = 0, mo = 0, d = 0;
  detail::civil_from_days(days, y, mo, d);
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:00:00Z", y, mo, d, h);
  return buf;
}

/// Parse a plain `YYYY-MM-DD` date into the epoch hour of its UTC midnight.
inline std::int64_t parse_iso_date(const std::string& text) {
  int y = 0, mo = 0, d = 0;
  if (text.size() != 10 || std::sscanf(text.c_str(), "%4d-%2d-%2d", &y, &mo, &d) != 3 || mo < 1 ||
      mo > 12 || d < 1 || d > 31) {
    throw ConfigError("bad date '" + text + "' (expected YYYY-MM-DD)");
  }
  return epoch_hour_utc(y, mo, d, 0);
}

}  // namespace pvcast
