#pragma once

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvcast/align.hpp"
#include "pvcast/dataset.hpp"
#include "pvcast/error.hpp"
#include "pvcast/evaluate.hpp"
#include "pvcast/fetch.hpp"
#include "pvcast/metrics.hpp"
#include "pvcast/model.hpp"
#include "pvcast/point_csv.hpp"
#include "pvcast/power.hpp"
#include "pvcast/split.hpp"
#include "pvcast/synthetic.hpp"

namespace pvcast {

struct SiteConfig {
  std::string label = "site";
  int utc_offset_hours = -8;
};

struct FetchConfig {
  std::string url_template;
  std::string start_date;  // YYYY-MM-DD, inclusive
  std::string end_date;    // YYYY-MM-DD, inclusive
  std::vector<int> leads{0, 18};
  std::string cache_dir = "cache";
  int concurrency = 4;
  int max_retries = 2;
};

/// Pieces of SyntheticConfig settable from the config file; seed, offset,
/// lag and lead always come from the top-level run settings.
struct SynthSettings {
  int days = 30;
  double forecast_informativeness = 1.0;
  std::map<std::string, double> sigma;  // per-variable injected noise
  std::optional<double> peak_irradiance_wm2;
  std::optional<double> temperature_daily_sd_k;
  std::optional<double> wind_sd_ms;
};

/**
 * @brief Everything a run needs, loadable from a JSON config file.
 *
 * Precedence: config file values, then environment overrides
 * (PVCAST_CACHE_DIR, PVCAST_OUT_DIR), then explicit CLI flags.
 */
struct RunConfig {
  SiteConfig site;
  std::string dataset_csv = "dataset.csv";
  std::string out_dir = "out";
  std::string models_dir;  // empty: use out_dir
  int lag_hours = 24;
  int lead_hours = 18;
  double split_fraction = 0.75;
  PlantConfig plant;
  AccuracyPolicy policy = AccuracyPolicy::mean_of_truth;
  std::map<std::string, double> capacity{{"irradiance", 1000.0},
                                         {"temperature", 300.0},
                                         {"wind", 25.0}};
  std::uint64_t seed = 1;
  SynthSettings synth;
  FetchConfig fetch;

  std::filesystem::path models_path() const {
    return models_dir.empty() ? std::filesystem::path(out_dir) : std::filesystem::path(models_dir);
  }

  void validate() const {
    if (lead_hours < 1 || lead_hours > ForecastRecord::kMaxLeadHours) {
      throw ConfigError("lead must be in 1..18");
    }
    if (lag_hours < 1) throw ConfigError("lag must be >= 1");
    if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
      throw ConfigError("split fraction must be in (0,1)");
    }
    plant.validate();
  }

  double capacity_for(Variable v) const {
    auto it = capacity.find(variable_name(v));
    return it == capacity.end() ? 0.0 : it->second;
  }

  /// Semantic (path-free) echo embedded in reports, so identical runs into
  /// different directories emit byte-identical files.
  nlohmann::json echo() const {
    nlohmann::json j;
    j["site"] = {{"label", site.label}, {"utc_offset_hours", site.utc_offset_hours}};
    j["lag_hours"] = lag_hours;
    j["lead_hours"] = lead_hours;
    j["split_fraction"] = split_fraction;
    j["accuracy_policy"] = accuracy_policy_name(policy);
    j["plant"] = {{"eta", plant.eta},
                  {"area_m2", plant.area_m2},
                  {"temp_coeff", plant.temp_coeff},
                  {"t_ref", plant.t_ref},
                  {"floor_at_zero", plant.floor_at_zero}};
    j["seed"] = seed;
    return j;
  }
};

namespace detail {

template <typename T>
void read_if(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace detail

/// Parse a config document; unknown keys are ignored.
inline RunConfig parse_run_config(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (j.contains("site")) {
      detail::read_if(j["site"], "label", c.site.label);
      detail::read_if(j["site"], "utc_offset_hours", c.site.utc_offset_hours);
    }
    detail::read_if(j, "dataset_csv", c.dataset_csv);
    detail::read_if(j, "out_dir", c.out_dir);
    detail::read_if(j, "models_dir", c.models_dir);
    detail::read_if(j, "lag_hours", c.lag_hours);
    detail::read_if(j, "lead_hours", c.lead_hours);
    detail::read_if(j, "split_fraction", c.split_fraction);
    if (j.contains("plant")) {
      detail::read_if(j["plant"], "eta", c.plant.eta);
      detail::read_if(j["plant"], "area_m2", c.plant.area_m2);
      detail::read_if(j["plant"], "temp_coeff", c.plant.temp_coeff);
      detail::read_if(j["plant"], "t_ref", c.plant.t_ref);
      detail::read_if(j["plant"], "floor_at_zero", c.plant.floor_at_zero);
    }
    if (j.contains("accuracy_policy")) {
      auto p = accuracy_policy_from_name(j["accuracy_policy"].get<std::string>());
      if (!p) throw ConfigError("unknown accuracy_policy '" +
                                j["accuracy_policy"].get<std::string>() + "'");
      c.policy = *p;
    }
    if (j.contains("capacity")) {
      for (const auto& [k, v] : j["capacity"].items()) c.capacity[k] = v.get<double>();
    }
    detail::read_if(j, "seed", c.seed);
    if (j.contains("synth")) {
      const auto& s = j["synth"];
      detail::read_if(s, "days", c.synth.days);
      detail::read_if(s, "forecast_informativeness", c.synth.forecast_informativeness);
      if (s.contains("sigma")) {
        for (const auto& [k, v] : s["sigma"].items()) c.synth.sigma[k] = v.get<double>();
      }
      if (s.contains("peak_irradiance_wm2")) {
        c.synth.peak_irradiance_wm2 = s["peak_irradiance_wm2"].get<double>();
      }
      if (s.contains("temperature_daily_sd_k")) {
        c.synth.temperature_daily_sd_k = s["temperature_daily_sd_k"].get<double>();
      }
      if (s.contains("wind_sd_ms")) c.synth.wind_sd_ms = s["wind_sd_ms"].get<double>();
    }
    if (j.contains("fetch")) {
      const auto& f = j["fetch"];
      detail::read_if(f, "url_template", c.fetch.url_template);
      detail::read_if(f, "start_date", c.fetch.start_date);
      detail::read_if(f, "end_date", c.fetch.end_date);
      detail::read_if(f, "leads", c.fetch.leads);
      detail::read_if(f, "cache_dir", c.fetch.cache_dir);
      detail::read_if(f, "concurrency", c.fetch.concurrency);
      detail::read_if(f, "max_retries", c.fetch.max_retries);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return c;
}

inline RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_run_config(j);
}

inline void apply_env_overrides(RunConfig& config) {
  if (const char* cache = std::getenv("PVCAST_CACHE_DIR")) config.fetch.cache_dir = cache;
  if (const char* out = std::getenv("PVCAST_OUT_DIR")) config.out_dir = out;
}

/// SyntheticConfig assembled from the run settings.
inline SyntheticConfig synthetic_config(const RunConfig& config) {
  SyntheticConfig s;
  s.days = config.synth.days;
  s.seed = config.seed;
  s.forecast_informativeness = config.synth.forecast_informativeness;
  s.utc_offset_hours = config.site.utc_offset_hours;
  s.lag_hours = config.lag_hours;
  s.lead_hours = config.lead_hours;
  s.site_id = config.site.label;
  if (config.synth.peak_irradiance_wm2) s.peak_irradiance_wm2 = *config.synth.peak_irradiance_wm2;
  if (config.synth.temperature_daily_sd_k) {
    s.temperature_daily_sd_k = *config.synth.temperature_daily_sd_k;
  }
  if (config.synth.wind_sd_ms) s.wind_sd_ms = *config.synth.wind_sd_ms;
  for (const auto& [name, sigma] : config.synth.sigma) {
    auto v = variable_from_name(name);
    if (!v) throw ConfigError("unknown variable '" + name + "' in synth.sigma");
    s.set_sigma(*v, sigma);
  }
  return s;
}

// ---------------------------------------------------------------------------
// synth
// ---------------------------------------------------------------------------

struct SynthOutputs {
  std::filesystem::path dataset_csv;
  std::filesystem::path truth_json;
  std::size_t measurements = 0;
  std::size_t forecasts = 0;
};

/// Generate a synthetic dataset; writes dataset.csv plus the generating
/// ground truth (truth.json) into out_dir.
inline SynthOutputs run_synth(const RunConfig& config) {
  namespace fs = std::filesystem;
  const SyntheticConfig sc = synthetic_config(config);
  Dataset ds = generate(sc);

  fs::create_directories(config.out_dir);
  SynthOutputs out;
  out.dataset_csv = fs::path(config.out_dir) / "dataset.csv";
  write_point_csv(ds, out.dataset_csv);
  out.measurements = ds.measurements.size();
  out.forecasts = ds.forecasts.size();

  nlohmann::json truth;
  truth["schema_version"] = 1;
  truth["seed"] = sc.seed;
  truth["days"] = sc.days;
  truth["forecast_informativeness"] = sc.forecast_informativeness;
  truth["utc_offset_hours"] = sc.utc_offset_hours;
  for (Variable v : kAllVariables) {
    nlohmann::json rows = nlohmann::json::array();
    for (int clock = 0; clock < 24; ++clock) {
      TrueParams p = sc.effective_params(v, clock);
      rows.push_back({{"hour", clock + 1},
                      {"alpha", p.alpha},
                      {"beta", p.beta},
                      {"gamma", p.gamma},
                      {"sigma", p.sigma}});
    }
    truth["true_params"][variable_name(v)] = std::move(rows);
  }
  out.truth_json = fs::path(config.out_dir) / "truth.json";
  detail::write_text_file(out.truth_json, truth.dump(2) + "\n");
  return out;
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitOutputs {
  std::map<std::string, HourlyFit> fits;  // key "<variable>_<kind>"
  std::vector<std::filesystem::path> model_files;
  std::filesystem::path summary_csv;
  std::string summary_table;  // per-hour (alpha, beta, sigma) text table
  std::vector<std::string> warnings;
};

inline std::string model_file_name(Variable v, ModelKind k) {
  return std::string("model_") + variable_name(v) + "_" + model_kind_name(k) + ".json";
}

namespace detail {

inline std::string param_triple(const HourlyModel& m) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.2f,%.2f,%.2f)", m.alpha, m.beta.value_or(0.0), m.sigma_eps);
  return buf;
}

}  // namespace detail

/**
 * @brief Align, split and fit hourly models for every variable.
 *
 * Writes one model JSON per (variable, kind) cell and a combined
 * fit_summary.csv; the returned summary_table mirrors the per-hour
 * (alpha, beta, sigma) layout for quick inspection.
 */
inline FitOutputs run_fit(const RunConfig& config, const Dataset& dataset,
                          std::optional<ModelKind> only_kind = std::nullopt) {
  namespace fs = std::filesystem;
  config.validate();
  fs::create_directories(config.models_path());

  std::vector<ModelKind> kinds;
  if (only_kind) {
    kinds.push_back(*only_kind);
  } else {
    kinds = {ModelKind::ar, ModelKind::arx};
  }

  FitOutputs out;
  std::string csv = "variable,kind,hour,alpha,beta,gamma,sigma_eps,n_train\n";
  for (Variable v : kAllVariables) {
    AlignmentResult aligned = align(dataset, {v, config.lag_hours, config.lead_hours});
    SplitResult parts = split(aligned.buckets, {config.split_fraction});
    for (const auto& w : parts.warnings) out.warnings.push_back(w);

    for (ModelKind kind : kinds) {
      HourlyFit fit = fit_hourly(parts.train, kind, v, config.lag_hours, config.lead_hours);
      fit.set.fit_metadata.train_fraction = config.split_fraction;
      auto hours = bucket_epoch_hours(parts.train);
      if (!hours.empty()) {
        auto [lo, hi] = std::minmax_element(hours.begin(), hours.end());
        fit.set.fit_metadata.data_start = format_iso_hour({*lo, config.site.utc_offset_hours});
        fit.set.fit_metadata.data_end = format_iso_hour({*hi, config.site.utc_offset_hours});
      }
      for (const auto& w : fit.warnings) {
        out.warnings.push_back(std::string(variable_name(v)) + "/" + model_kind_name(kind) +
                               ": " + w);
      }

      const fs::path file = config.models_path() / model_file_name(v, kind);
      save_models(fit.set, file);
      out.model_files.push_back(file);

      for (const auto& m : fit.set.models) {
        csv += std::string(variable_name(v)) + ',' + model_kind_name(kind) + ',' +
               std::to_string(m.hour) + ',' + detail::format_double(m.alpha) + ',' +
               (m.beta ? detail::format_double(*m.beta) : std::string()) + ',' +
               detail::format_double(m.gamma) + ',' + detail::format_double(m.sigma_eps) + ',' +
               std::to_string(m.n_train) + '\n';
      }
      out.fits.emplace(std::string(variable_name(v)) + "_" + model_kind_name(kind),
                       std::move(fit));
    }
  }

  out.summary_csv = config.models_path() / "fit_summary.csv";
  detail::write_text_file(out.summary_csv, csv);

  // Per-hour (alpha, beta, sigma) table for the ARX cells, when fitted.
  if (!only_kind || *only_kind == ModelKind::arx) {
    std::string table = "hour  irradiance           temperature          wind\n";
    for (int hour = 1; hour <= 24; ++hour) {
      char line[128];
      auto cell = [&](Variable v) {
        return detail::param_triple(
            out.fits.at(std::string(variable_name(v)) + "_arx").set.model_for_hour(hour));
      };
      std::snprintf(line, sizeof line, "%-5d %-20s %-20s %-20s\n", hour,
                    cell(Variable::irradiance).c_str(), cell(Variable::temperature).c_str(),
                    cell(Variable::wind).c_str());
      table += line;
    }
    out.summary_table = table;
  }
  return out;
}

// ---------------------------------------------------------------------------
// evaluate
// ---------------------------------------------------------------------------

struct EvaluateOutputs {
  EvaluationArtifacts artifacts;
  std::vector<std::filesystem::path> files;
};

/**
 * @brief Score AR, ARX and the raw lead-N forecast on the test split, plus
 * the power comparison, and emit every report file.
 *
 * Model files must exist (run_fit first) and must match the run's lag and
 * lead settings. All models are scored on the identical test index; the
 * report carries its hash.
 */
inline EvaluateOutputs run_evaluate(const RunConfig& config, const Dataset& dataset) {
  namespace fs = std::filesystem;
  config.validate();

  EvaluationArtifacts a;
  a.config_echo = config.echo();

  std::map<std::string, ModelSet> sets;  // "<variable>_<kind>"
  for (Variable v : kAllVariables) {
    for (ModelKind kind : {ModelKind::ar, ModelKind::arx}) {
      const fs::path file = config.models_path() / model_file_name(v, kind);
      if (!fs::exists(file)) {
        throw ModelNotFoundError("'" + file.string() + "' (run fit first)");
      }
      ModelSet set = load_models(file);
      if (set.variable != v || set.kind != kind) {
        throw CorruptFileError("'" + file.string() + "' does not hold " +
                               std::string(variable_name(v)) + "/" + model_kind_name(kind));
      }
      if (set.lag_hours != config.lag_hours || set.lead_hours != config.lead_hours) {
        throw ConfigError("'" + file.string() + "' was fitted with lag/lead " +
                          std::to_string(set.lag_hours) + "/" + std::to_string(set.lead_hours) +
                          ", run uses " + std::to_string(config.lag_hours) + "/" +
                          std::to_string(config.lead_hours));
      }
      sets.emplace(std::string(variable_name(v)) + "_" + model_kind_name(kind), std::move(set));
    }
  }

  std::map<std::string, SplitResult> splits;
  std::optional<std::string> expected_hash;
  for (Variable v : kAllVariables) {
    AlignmentResult aligned = align(dataset, {v, config.lag_hours, config.lead_hours});
    SplitResult parts = split(aligned.buckets, {config.split_fraction});

    const std::string hash = index_hash(bucket_epoch_hours(parts.test));
    if (!expected_hash) {
      expected_hash = hash;
    } else if (*expected_hash != hash) {
      throw IndexMismatchError("test index differs between variables");
    }

    const std::string var = variable_name(v);
    a.denominators[var] =
        accuracy_denominators(parts.test, config.policy, config.capacity_for(v));
    a.reports[var]["ar"] = evaluate_model("ar", v, &sets.at(var + "_ar"), parts.test,
                                          config.policy, config.capacity_for(v));
    a.reports[var]["arx"] = evaluate_model("arx", v, &sets.at(var + "_arx"), parts.test,
                                           config.policy, config.capacity_for(v));
    a.reports[var]["hrrr"] =
        evaluate_model("hrrr", v, nullptr, parts.test, config.policy, config.capacity_for(v));

    // Full-dataset raw forecast quality and the scatter/histogram series.
    std::vector<AlignedSample> all;
    for (int hour = 1; hour <= 24; ++hour) {
      const auto& b = aligned.buckets.bucket(hour);
      all.insert(all.end(), b.begin(), b.end());
    }
    std::sort(all.begin(), all.end(), [](const AlignedSample& x, const AlignedSample& y) {
      return x.valid_at.epoch_hour < y.valid_at.epoch_hour;
    });
    std::vector<double> fc, truth;
    for (const auto& s : all) {
      fc.push_back(s.exog);
      truth.push_back(s.target);
    }
    a.forecast_quality[var] = {rmse(fc, truth), mae(fc, truth), fc.size()};
    a.full_series[var] = std::move(all);

    splits.emplace(var, std::move(parts));
  }
  a.test_index_hash = *expected_hash;

  // Joint (I, T) series over the shared test index for the power map.
  auto by_time = [](const HourlyBuckets& buckets) {
    std::map<std::int64_t, AlignedSample> m;
    for (int hour = 1; hour <= 24; ++hour) {
      for (const auto& r : buckets.bucket(hour)) m[r.valid_at.epoch_hour] = r;
    }
    return m;
  };
  auto irr = by_time(splits.at("irradiance").test);
  auto temp = by_time(splits.at("temperature").test);
  if (irr.size() != temp.size()) throw IndexMismatchError("irradiance/temperature test index");

  JointWeatherSeries measured;
  std::map<std::string, JointWeatherSeries> predicted{{"ar", {}}, {"arx", {}}};
  for (const auto& [epoch, irr_row] : irr) {
    auto it = temp.find(epoch);
    if (it == temp.end()) throw IndexMismatchError("irradiance/temperature test index");
    const AlignedSample& temp_row = it->second;

    measured.times.push_back(irr_row.valid_at);
    measured.irradiance.push_back(irr_row.target);
    measured.temperature.push_back(temp_row.target);
    for (const std::string kind : {"ar", "arx"}) {
      auto& series = predicted[kind];
      series.times.push_back(irr_row.valid_at);
      series.irradiance.push_back(predict(sets.at("irradiance_" + kind), irr_row.hour_of_day,
                                          irr_row.lag, irr_row.exog));
      series.temperature.push_back(predict(sets.at("temperature_" + kind), temp_row.hour_of_day,
                                           temp_row.lag, temp_row.exog));
    }
  }
  a.power = power_comparison(config.plant, measured, predicted);

  EvaluateOutputs out;
  out.files = emit_reports(a, config.out_dir);
  out.artifacts = std::move(a);
  return out;
}

// ---------------------------------------------------------------------------
// predict
// ---------------------------------------------------------------------------

/**
 * @brief One 18-hour-ahead prediction at a target hour: the weather triple
 * and the mapped power, with the models' coefficients echoed.
 */
inline nlohmann::json run_predict(const RunConfig& config, const Dataset& dataset,
                                  const std::string& at_iso, ModelKind kind = ModelKind::arx) {
  config.validate();
  const TimeIndex at = parse_iso_hour(at_iso, config.site.utc_offset_hours);

  auto lag_it = dataset.measurements.find(at.plus_hours(-config.lag_hours));
  if (lag_it == dataset.measurements.end()) {
    throw NotFoundError("no measurement " + std::to_string(config.lag_hours) +
                        "h before " + at_iso + " to supply the lag input");
  }

  std::optional<WeatherSample> exog;
  if (kind == ModelKind::arx) {
    for (const auto& f : dataset.forecasts) {
      if (f.lead_hours == config.lead_hours && f.valid_at == at) {
        exog = f.sample;
        break;
      }
    }
    if (!exog) {
      throw MissingExogenousError("no lead-" + std::to_string(config.lead_hours) +
                                  " forecast valid at " + at_iso);
    }
  }

  nlohmann::json out;
  out["at"] = at_iso;
  out["hour_of_day"] = hour_of_day(at);
  out["kind"] = model_kind_name(kind);
  out["lead_hours"] = config.lead_hours;

  double irradiance = 0.0, temperature = 0.0;
  for (Variable v : kAllVariables) {
    const auto file = config.models_path() / model_file_name(v, kind);
    if (!std::filesystem::exists(file)) {
      throw ModelNotFoundError("'" + file.string() + "' (run fit first)");
    }
    ModelSet set = load_models(file);
    const double lag_value = lag_it->second.value(v);
    const std::optional<double> exog_value =
        exog ? std::optional<double>(exog->value(v)) : std::nullopt;
    const double value = predict(set, at, lag_value, exog_value);
    if (v == Variable::irradiance) irradiance = value;
    if (v == Variable::temperature) temperature = value;

    const HourlyModel& m = set.model_for_hour(hour_of_day(at));
    nlohmann::json jm = {{"value", value},     {"unit", variable_unit(v)},
                         {"alpha", m.alpha},   {"gamma", m.gamma},
                         {"sigma_eps", m.sigma_eps}, {"n_train", m.n_train},
                         {"lag_input", lag_value}};
    if (m.beta) jm["beta"] = *m.beta;
    if (exog_value) jm["exog_input"] = *exog_value;
    out["weather"][variable_name(v)] = std::move(jm);
  }

  out["power_w"] = power(config.plant, irradiance, temperature);
  return out;
}

// ---------------------------------------------------------------------------
// fetch / ingest
// ---------------------------------------------------------------------------

/// Enumerate (cycle, lead) jobs for every hourly cycle in the configured
/// inclusive date range, then fetch with the bounded client.
inline FetchSummary run_fetch(const RunConfig& config) {
  const FetchConfig& f = config.fetch;
  if (f.url_template.empty()) throw ConfigError("fetch.url_template is not set");
  if (f.start_date.empty() || f.end_date.empty()) {
    throw ConfigError("fetch.start_date and fetch.end_date are required");
  }
  const std::int64_t start = parse_iso_date(f.start_date);
  const std::int64_t end = parse_iso_date(f.end_date);
  if (end < start) throw ConfigError("fetch.end_date precedes fetch.start_date");
  for (int lead : f.leads) {
    if (lead < 0 || lead > ForecastRecord::kMaxLeadHours) {
      throw ConfigError("fetch lead must be in 0..18");
    }
  }

  std::vector<FetchJob> jobs;
  for (std::int64_t hour = start; hour < end + 24; ++hour) {
    for (int lead : f.leads) {
      jobs.push_back({TimeIndex{hour, config.site.utc_offset_hours}, lead});
    }
  }
  ArchiveFetcher fetcher(f.url_template, f.cache_dir, f.max_retries);
  return fetch_many(fetcher, jobs, f.concurrency);
}

struct IngestOutputs {
  std::filesystem::path dataset_csv;
  std::size_t files = 0;
  std::size_t records = 0;
  std::size_t measurements = 0;
  std::size_t duplicates_dropped = 0;
  std::string span_start, span_end;
};

/// Parse one or more canonical CSVs (files or directories of *.csv),
/// assemble the dataset and write it back normalized.
inline IngestOutputs run_ingest(const RunConfig& config,
                                const std::vector<std::string>& inputs) {
  namespace fs = std::filesystem;
  if (inputs.empty()) throw ConfigError("ingest needs at least one input file or directory");

  std::vector<fs::path> files;
  for (const auto& input : inputs) {
    fs::path p(input);
    if (fs::is_directory(p)) {
      for (const auto& entry : fs::directory_iterator(p)) {
        if (entry.path().extension() == ".csv") files.push_back(entry.path());
      }
    } else {
      files.push_back(p);
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw EmptyInputError("no .csv files among the inputs");

  std::vector<ForecastRecord> records;
  for (const auto& file : files) {
    auto part = parse_point_csv(file, config.site.utc_offset_hours);
    records.insert(records.end(), part.begin(), part.end());
  }
  DatasetBuild build = build_dataset(records, config.site.label);

  IngestOutputs out;
  out.files = files.size();
  out.records = records.size();
  out.measurements = build.dataset.measurements.size();
  out.duplicates_dropped = build.duplicates_dropped;
  if (!build.dataset.measurements.empty()) {
    auto [lo, hi] = build.dataset.measurement_span();
    out.span_start = format_iso_hour(lo);
    out.span_end = format_iso_hour(hi);
  }
  fs::create_directories(config.out_dir);
  out.dataset_csv = fs::path(config.out_dir) / "dataset.csv";
  write_point_csv(build.dataset, out.dataset_csv);
  return out;
}

/// Load the configured dataset CSV.
inline Dataset load_dataset(const RunConfig& config) {
  return load_dataset_csv(config.dataset_csv, config.site.utc_offset_hours, config.site.label)
      .dataset;
}

}  // namespace pvcast
