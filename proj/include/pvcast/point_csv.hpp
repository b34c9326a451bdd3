#pragma once

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pvcast/dataset.hpp"
#include "pvcast/error.hpp"
#include "pvcast/types.hpp"

namespace pvcast {

/// Canonical point-series header. Field names carry the units; any other
/// header (e.g. wind in km/h) is a schema violation.
inline constexpr std::string_view kPointCsvHeader =
    "valid_time_utc,issued_time_utc,lead_hours,dswrf_wm2,t2m_k,wind10_ms";

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline double parse_double_field(const std::string& s, const char* what, std::size_t row) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw RowError("row " + std::to_string(row) + ": bad " + what + " value '" + s + "'");
  }
  return v;
}

inline int parse_int_field(const std::string& s, const char* what, std::size_t row) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw RowError("row " + std::to_string(row) + ": bad " + what + " value '" + s + "'");
  }
  return v;
}

/// Shortest round-trip decimal form, so serialize-then-parse is lossless.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace detail

/**
 * @brief Parse one canonical point-series CSV into forecast records.
 *
 * Strict contract: the header must match kPointCsvHeader exactly and every
 * row must be a consistent hour-resolution record satisfying the physical
 * invariants. All row violations are collected and reported together.
 *
 * @param utc_offset_hours site offset stamped onto parsed time indices.
 * @throws SchemaError on a wrong header, RowError naming each bad row,
 *         IoError when the file cannot be read.
 */
inline std::vector<ForecastRecord> parse_point_csv(const std::filesystem::path& file,
                                                   int utc_offset_hours = 0) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open '" + file.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw SchemaError("'" + file.string() + "' is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kPointCsvHeader) {
    throw SchemaError("'" + file.string() + "' header mismatch; expected '" +
                      std::string(kPointCsvHeader) + "', got '" + line + "'");
  }

  std::vector<ForecastRecord> records;
  std::vector<std::string> row_errors;
  std::size_t row = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      auto fields = detail::split_csv_line(line);
      if (fields.size() != 6) {
        throw RowError("row " + std::to_string(row) + ": expected 6 fields, got " +
                       std::to_string(fields.size()));
      }
      ForecastRecord r;
      r.valid_at = parse_iso_hour(fields[0], utc_offset_hours);
      r.issued_at = parse_iso_hour(fields[1], utc_offset_hours);
      r.lead_hours = detail::parse_int_field(fields[2], "lead_hours", row);
      r.sample.irradiance = detail::parse_double_field(fields[3], "dswrf_wm2", row);
      r.sample.temperature = detail::parse_double_field(fields[4], "t2m_k", row);
      r.sample.wind = detail::parse_double_field(fields[5], "wind10_ms", row);
      if (!r.consistent()) {
        throw RowError("row " + std::to_string(row) +
                       ": lead/issued/valid inconsistent or lead outside 0..18");
      }
      if (!r.sample.valid()) {
        throw RowError("row " + std::to_string(row) +
                       ": sample violates physical bounds (irradiance>=0, temp>0, wind>=0)");
      }
      records.push_back(r);
    } catch (const RowError& e) {
      row_errors.emplace_back(e.what());
    }
  }

  if (!row_errors.empty()) {
    std::string msg = "'" + file.string() + "': " + std::to_string(row_errors.size()) +
                      " bad row(s):";
    for (const auto& e : row_errors) msg += "\n  " + e;
    throw RowError(msg);
  }
  return records;
}

/**
 * @brief Write a dataset's forecast records as canonical CSV.
 *
 * Rows are ordered by (issued_at, lead); parsing the output and rebuilding
 * reproduces the dataset exactly.
 */
inline void write_point_csv(const Dataset& dataset, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw IoError("cannot write '" + file.string() + "'");
  out << kPointCsvHeader << '\n';
  for (const auto& r : dataset.forecasts) {
    out << format_iso_hour(r.valid_at) << ',' << format_iso_hour(r.issued_at) << ','
        << r.lead_hours << ',' << detail::format_double(r.sample.irradiance) << ','
        << detail::format_double(r.sample.temperature) << ','
        << detail::format_double(r.sample.wind) << '\n';
  }
  if (!out) throw IoError("short write to '" + file.string() + "'");
}

/// Parse + assemble in one step.
inline DatasetBuild load_dataset_csv(const std::filesystem::path& file, int utc_offset_hours,
                                     std::string site_id = {}) {
  auto records = parse_point_csv(file, utc_offset_hours);
  auto build = build_dataset(records, std::move(site_id));
  build.dataset.provenance.push_back(file.filename().string());
  return build;
}

}  // namespace pvcast
