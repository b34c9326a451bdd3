#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvcast/align.hpp"
#include "pvcast/error.hpp"
#include "pvcast/metrics.hpp"
#include "pvcast/model.hpp"
#include "pvcast/point_csv.hpp"
#include "pvcast/power.hpp"

namespace pvcast {

/// Evaluation of one prediction source ("ar", "arx" or "hrrr") for one variable.
struct EvalReport {
  std::string model;
  Variable variable = Variable::irradiance;
  HourlyErrorCurve per_hour;
  double overall_rmse = 0.0;
  double overall_mae = 0.0;
  std::size_t n_total = 0;
  AccuracyResult accuracy;
};

/// (I, T) series sharing one time index, for the power comparison.
struct JointWeatherSeries {
  std::vector<TimeIndex> times;
  std::vector<double> irradiance;
  std::vector<double> temperature;
};

/// Per-hour RMS power levels and the signed mean gap to the reference.
struct PowerComparison {
  std::map<int, double> rms_reference_w;
  std::map<std::string, std::map<int, double>> rms_by_model_w;
  std::map<std::string, double> mean_signed_error_w;
};

namespace detail {

inline std::uint64_t fnv1a64(const std::vector<std::int64_t>& values) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::int64_t v : values) {
    auto u = static_cast<std::uint64_t>(v);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (u >> (8 * byte)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  }
  return h;
}

inline std::string hour_key(int hour) {
  char buf[4];
  std::snprintf(buf, sizeof buf, "%02d", hour);
  return buf;
}

inline double rms(const std::vector<double>& v) {
  double ss = 0.0;
  for (double x : v) ss += x * x;
  return v.empty() ? 0.0 : std::sqrt(ss / static_cast<double>(v.size()));
}

}  // namespace detail

/// Order-insensitive fingerprint of a test index (sorted FNV-1a), recorded
/// in reports to prove every model was scored on identical timestamps.
inline std::string index_hash(std::vector<std::int64_t> epoch_hours) {
  std::sort(epoch_hours.begin(), epoch_hours.end());
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(detail::fnv1a64(epoch_hours)));
  return buf;
}

inline std::vector<std::int64_t> bucket_epoch_hours(const HourlyBuckets& buckets) {
  std::vector<std::int64_t> hours;
  hours.reserve(buckets.total());
  for (int h = 1; h <= 24; ++h) {
    for (const auto& r : buckets.bucket(h)) hours.push_back(r.valid_at.epoch_hour);
  }
  return hours;
}

/**
 * @brief Score one prediction source on the test buckets of one variable.
 *
 * `model` selects the prediction path: a fitted set for "ar"/"arx", or the
 * raw exogenous forecast when `set` is null ("hrrr").
 */
inline EvalReport evaluate_model(const std::string& model, Variable variable, const ModelSet* set,
                                 const HourlyBuckets& test, AccuracyPolicy policy,
                                 double fixed_capacity = 0.0) {
  EvalReport report;
  report.model = model;
  report.variable = variable;
  report.per_hour = set != nullptr ? hourly_rmse_curve(*set, test) : hourly_forecast_curve(test);

  std::vector<double> pred, truth;
  for (int hour = 1; hour <= 24; ++hour) {
    for (const auto& r : test.bucket(hour)) {
      pred.push_back(set != nullptr ? predict(*set, hour, r.lag, r.exog) : r.exog);
      truth.push_back(r.target);
    }
  }
  if (pred.empty()) throw EmptyInputError("no test samples for " + model);
  report.overall_rmse = rmse(pred, truth);
  report.overall_mae = mae(pred, truth);
  report.n_total = pred.size();
  report.accuracy =
      accuracy_pct(report.per_hour.rmse_by_hour, accuracy_denominators(test, policy, fixed_capacity));
  return report;
}

/**
 * @brief Compare RMS power levels per hour of day.
 *
 * The reference is the plant model applied to measured weather; each
 * model's entry is the plant model applied to its predicted weather. The
 * headline number per model is the signed mean over hours of
 * (RMS_model - RMS_reference), in watts.
 *
 * @throws IndexMismatchError unless every series shares the reference's
 *         exact time index.
 */
inline PowerComparison power_comparison(const PlantConfig& plant,
                                        const JointWeatherSeries& measured,
                                        const std::map<std::string, JointWeatherSeries>& models) {
  for (const auto& [name, series] : models) {
    if (series.times.size() != measured.times.size() ||
        !std::equal(series.times.begin(), series.times.end(), measured.times.begin())) {
      throw IndexMismatchError("model '" + name + "' not scored on the reference time index");
    }
  }

  auto power_by_hour = [&](const JointWeatherSeries& s) {
    std::map<int, std::vector<double>> by_hour;
    for (std::size_t i = 0; i < s.times.size(); ++i) {
      by_hour[hour_of_day(s.times[i])].push_back(power(plant, s.irradiance[i], s.temperature[i]));
    }
    return by_hour;
  };

  PowerComparison out;
  auto ref = power_by_hour(measured);
  for (const auto& [hour, values] : ref) out.rms_reference_w[hour] = detail::rms(values);

  for (const auto& [name, series] : models) {
    auto by_hour = power_by_hour(series);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [hour, values] : by_hour) {
      const double r = detail::rms(values);
      out.rms_by_model_w[name][hour] = r;
      sum += r - out.rms_reference_w.at(hour);
      ++n;
    }
    out.mean_signed_error_w[name] = n == 0 ? 0.0 : sum / static_cast<double>(n);
  }
  return out;
}

/// Raw lead-N forecast quality vs measurements (full-dataset summary).
struct ForecastQuality {
  double rmse = 0.0;
  double mae = 0.0;
  std::size_t n = 0;
};

/// Everything cmd_evaluate emits, assembled in memory first.
struct EvaluationArtifacts {
  nlohmann::json config_echo;
  std::string test_index_hash;
  // variable name -> model name ("ar"/"hrrr"/"arx") -> report
  std::map<std::string, std::map<std::string, EvalReport>> reports;
  std::map<std::string, std::map<int, double>> denominators;
  std::map<std::string, ForecastQuality> forecast_quality;
  // variable name -> full aligned series, time-ascending (scatter/histogram)
  std::map<std::string, std::vector<AlignedSample>> full_series;
  PowerComparison power;
};

namespace detail {

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

inline nlohmann::json report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["overall"] = {{"rmse", r.overall_rmse}, {"mae", r.overall_mae}, {"n", r.n_total}};
  nlohmann::json per_hour = nlohmann::json::object();
  for (const auto& [hour, rm] : r.per_hour.rmse_by_hour) {
    per_hour[hour_key(hour)] = {{"rmse", rm},
                                {"mae", r.per_hour.mae_by_hour.at(hour)},
                                {"n", r.per_hour.n_by_hour.at(hour)}};
  }
  j["per_hour"] = std::move(per_hour);
  j["accuracy_pct"] = r.accuracy.overall_pct;
  nlohmann::json acc_hours = nlohmann::json::object();
  for (const auto& [hour, pct] : r.accuracy.per_hour_pct) acc_hours[hour_key(hour)] = pct;
  j["per_hour_accuracy_pct"] = std::move(acc_hours);
  j["excluded_hours"] = r.accuracy.excluded_hours;
  return j;
}

}  // namespace detail

/// Serialize the full evaluation to the report.json document.
inline nlohmann::json report_json(const EvaluationArtifacts& a) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["config"] = a.config_echo;
  doc["test_index_hash"] = a.test_index_hash;
  nlohmann::json vars = nlohmann::json::object();
  for (const auto& [var, models] : a.reports) {
    nlohmann::json jv;
    for (const auto& [model, report] : models) {
      jv["models"][model] = detail::report_to_json(report);
    }
    nlohmann::json denoms = nlohmann::json::object();
    for (const auto& [hour, d] : a.denominators.at(var)) denoms[detail::hour_key(hour)] = d;
    jv["denominators"] = std::move(denoms);
    const auto& fq = a.forecast_quality.at(var);
    jv["forecast_quality"] = {{"rmse", fq.rmse}, {"mae", fq.mae}, {"n", fq.n}};
    vars[var] = std::move(jv);
  }
  doc["variables"] = std::move(vars);
  nlohmann::json power;
  for (const auto& [model, v] : a.power.mean_signed_error_w) {
    power["mean_signed_rms_error_w"][model] = v;
  }
  nlohmann::json per_hour = nlohmann::json::object();
  for (const auto& [hour, ref] : a.power.rms_reference_w) {
    nlohmann::json cell;
    cell["measured"] = ref;
    for (const auto& [model, by_hour] : a.power.rms_by_model_w) {
      cell[model] = by_hour.at(hour);
    }
    per_hour[detail::hour_key(hour)] = std::move(cell);
  }
  power["per_hour_rms_w"] = std::move(per_hour);
  doc["power_comparison"] = std::move(power);
  return doc;
}

/**
 * @brief Write every report artifact into `out_dir`.
 *
 * Files and column schemas (all deterministic, byte-stable per input):
 *  - report.json
 *  - accuracy.csv: model,irradiance,temperature,wind
 *  - hourly_rmse_<var>.csv: hour,n,rmse_ar,rmse_arx,rmse_hrrr
 *  - forecast_error_scatter_<var>.csv: valid_time_utc,hour_of_day,measured,forecast,error
 *  - forecast_error_hist_<var>.csv: bin_left,bin_right,count
 *  - power_comparison.csv: hour,rms_measured_w,rms_ar_w,rms_arx_w
 */
inline std::vector<std::filesystem::path> emit_reports(const EvaluationArtifacts& a,
                                                       const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<fs::path> written;

  auto emit = [&](const fs::path& name, const std::string& content) {
    detail::write_text_file(out_dir / name, content);
    written.push_back(out_dir / name);
  };

  emit("report.json", report_json(a).dump(2) + "\n");

  {
    std::string csv = "model,irradiance,temperature,wind\n";
    for (const std::string model : {"ar", "hrrr", "arx"}) {
      csv += model;
      for (Variable v : kAllVariables) {
        csv += ',' + detail::format_double(a.reports.at(variable_name(v)).at(model).accuracy.overall_pct);
      }
      csv += '\n';
    }
    emit("accuracy.csv", csv);
  }

  for (Variable v : kAllVariables) {
    const auto& models = a.reports.at(variable_name(v));
    const auto& ar = models.at("ar").per_hour;
    const auto& arx = models.at("arx").per_hour;
    const auto& hrrr = models.at("hrrr").per_hour;
    std::string csv = "hour,n,rmse_ar,rmse_arx,rmse_hrrr\n";
    for (const auto& [hour, n] : ar.n_by_hour) {
      csv += std::to_string(hour) + ',' + std::to_string(n) + ',' +
             detail::format_double(ar.rmse_by_hour.at(hour)) + ',' +
             detail::format_double(arx.rmse_by_hour.at(hour)) + ',' +
             detail::format_double(hrrr.rmse_by_hour.at(hour)) + '\n';
    }
    emit(std::string("hourly_rmse_") + variable_name(v) + ".csv", csv);
  }

  for (Variable v : kAllVariables) {
    const auto& series = a.full_series.at(variable_name(v));
    std::string csv = "valid_time_utc,hour_of_day,measured,forecast,error\n";
    std::vector<double> errors;
    errors.reserve(series.size());
    for (const auto& s : series) {
      const double err = s.exog - s.target;
      errors.push_back(err);
      csv += format_iso_hour(s.valid_at) + ',' + std::to_string(s.hour_of_day) + ',' +
             detail::format_double(s.target) + ',' + detail::format_double(s.exog) + ',' +
             detail::format_double(err) + '\n';
    }
    emit(std::string("forecast_error_scatter_") + variable_name(v) + ".csv", csv);

    std::string hist_csv = "bin_left,bin_right,count\n";
    if (!errors.empty()) {
      Histogram h = histogram(errors);
      for (std::size_t i = 0; i < h.count.size(); ++i) {
        hist_csv += detail::format_double(h.edges[i]) + ',' +
                    detail::format_double(h.edges[i + 1]) + ',' + std::to_string(h.count[i]) +
                    '\n';
      }
    }
    emit(std::string("forecast_error_hist_") + variable_name(v) + ".csv", hist_csv);
  }

  {
    std::string csv = "hour,rms_measured_w,rms_ar_w,rms_arx_w\n";
    for (const auto& [hour, ref] : a.power.rms_reference_w) {
      csv += std::to_string(hour) + ',' + detail::format_double(ref) + ',' +
             detail::format_double(a.power.rms_by_model_w.at("ar").at(hour)) + ',' +
             detail::format_double(a.power.rms_by_model_w.at("arx").at(hour)) + '\n';
    }
    emit("power_comparison.csv", csv);
  }

  return written;
}

}  // namespace pvcast
