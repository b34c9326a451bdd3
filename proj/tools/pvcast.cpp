// pvcast: fit per-hour forecast models from local history and archived
// global forecasts, map predicted weather to PV power, evaluate models.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvcast/pipeline.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> dataset_csv;
  std::optional<std::string> out_dir;
  std::optional<std::string> models_dir;
  std::optional<std::string> cache_dir;
  std::optional<int> lag;
  std::optional<int> lead;
  std::optional<double> split;
  std::optional<std::string> policy;
  std::optional<std::uint64_t> seed;
  std::optional<int> utc_offset;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file");
  cmd->add_option("--data", f.dataset_csv, "canonical dataset CSV path");
  cmd->add_option("--out-dir", f.out_dir, "output directory");
  cmd->add_option("--models-dir", f.models_dir, "directory holding model JSON files");
  cmd->add_option("--cache-dir", f.cache_dir, "archive cache directory");
  cmd->add_option("--lag", f.lag, "lag hours for the local-history term");
  cmd->add_option("--lead", f.lead, "forecast lead hours (1..18)");
  cmd->add_option("--split", f.split, "train fraction in (0,1)");
  cmd->add_option("--policy", f.policy,
                  "accuracy normalizer: mean_of_truth|range_of_truth|fixed_capacity");
  cmd->add_option("--seed", f.seed, "seed for synthetic generation");
  cmd->add_option("--utc-offset", f.utc_offset, "site UTC offset hours for hour-of-day buckets");
}

// file config -> env overrides -> explicit flags.
pvcast::RunConfig resolve_config(const CommonFlags& f) {
  pvcast::RunConfig c;
  if (!f.config_path.empty()) c = pvcast::load_run_config(f.config_path);
  pvcast::apply_env_overrides(c);
  if (f.dataset_csv) c.dataset_csv = *f.dataset_csv;
  if (f.out_dir) c.out_dir = *f.out_dir;
  if (f.models_dir) c.models_dir = *f.models_dir;
  if (f.cache_dir) c.fetch.cache_dir = *f.cache_dir;
  if (f.lag) c.lag_hours = *f.lag;
  if (f.lead) c.lead_hours = *f.lead;
  if (f.split) c.split_fraction = *f.split;
  if (f.policy) {
    auto p = pvcast::accuracy_policy_from_name(*f.policy);
    if (!p) throw pvcast::ConfigError("unknown accuracy policy '" + *f.policy + "'");
    c.policy = *p;
  }
  if (f.seed) c.seed = *f.seed;
  if (f.utc_offset) c.site.utc_offset_hours = *f.utc_offset;
  return c;
}

std::optional<pvcast::ModelKind> parse_kind(const std::string& kind) {
  if (kind.empty() || kind == "both") return std::nullopt;
  auto k = pvcast::model_kind_from_name(kind);
  if (!k) throw pvcast::ConfigError("unknown model kind '" + kind + "' (ar|arx|both)");
  return k;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hour-of-day weather model fitting and PV power prediction"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string kind = "both";
  std::string predict_at;
  std::string predict_kind = "arx";
  std::vector<std::string> ingest_inputs;
  std::string url_template;
  std::string start_date, end_date;
  std::vector<int> leads;
  int concurrency = 0;
  int days = 0;
  double informativeness = -1.0;

  auto* synth = app.add_subcommand("synth", "generate a seeded synthetic dataset");
  add_common_flags(synth, flags);
  synth->add_option("--days", days, "days of hourly data to generate");
  synth->add_option("--informativeness", informativeness,
                    "forecast informativeness in [0,1]");

  auto* fetch = app.add_subcommand("fetch", "populate the archive cache for a date range");
  add_common_flags(fetch, flags);
  fetch->add_option("--url-template", url_template,
                    "archive URL with {date} {cycle} {lead} placeholders");
  fetch->add_option("--start", start_date, "first cycle date YYYY-MM-DD (inclusive)");
  fetch->add_option("--end", end_date, "last cycle date YYYY-MM-DD (inclusive)");
  fetch->add_option("--leads", leads, "lead hours to fetch (default 0 18)");
  fetch->add_option("--concurrency", concurrency, "max in-flight downloads");

  auto* ingest = app.add_subcommand("ingest", "validate and normalize point-series CSVs");
  add_common_flags(ingest, flags);
  ingest->add_option("inputs", ingest_inputs, "CSV files or directories")->required();

  auto* fit = app.add_subcommand("fit", "fit per-hour models and write model files");
  add_common_flags(fit, flags);
  fit->add_option("--kind", kind, "ar|arx|both (default both)");

  auto* evaluate = app.add_subcommand("evaluate", "score models on the test split");
  add_common_flags(evaluate, flags);

  auto* predict = app.add_subcommand("predict", "one 18-hour-ahead weather+power prediction");
  add_common_flags(predict, flags);
  predict->add_option("--at", predict_at, "target hour, ISO YYYY-MM-DDTHH:00:00Z")->required();
  predict->add_option("--kind", predict_kind, "ar|arx (default arx)");

  CLI11_PARSE(app, argc, argv);

  try {
    pvcast::RunConfig config = resolve_config(flags);

    if (synth->parsed()) {
      if (days > 0) config.synth.days = days;
      if (informativeness >= 0.0) config.synth.forecast_informativeness = informativeness;
      auto out = pvcast::run_synth(config);
      std::printf("wrote %s (%zu measurements, %zu records) and %s\n",
                  out.dataset_csv.c_str(), out.measurements, out.forecasts,
                  out.truth_json.c_str());
    } else if (fetch->parsed()) {
      if (!url_template.empty()) config.fetch.url_template = url_template;
      if (!start_date.empty()) config.fetch.start_date = start_date;
      if (!end_date.empty()) config.fetch.end_date = end_date;
      if (!leads.empty()) config.fetch.leads = leads;
      if (concurrency > 0) config.fetch.concurrency = concurrency;
      auto summary = pvcast::run_fetch(config);
      std::printf("requested %zu, downloaded %zu, cached %zu, missing %zu\n", summary.requested,
                  summary.downloaded, summary.cache_hits, summary.gaps.size());
      for (const auto& gap : summary.gaps) {
        std::printf("  gap: cycle %s lead %d\n",
                    pvcast::format_iso_hour(gap.cycle).c_str(), gap.lead_hours);
      }
      if (!summary.failures.empty()) {
        throw pvcast::NetworkError(std::to_string(summary.failures.size()) +
                                   " transfer(s) failed; first: " + summary.failures.front());
      }
    } else if (ingest->parsed()) {
      auto out = pvcast::run_ingest(config, ingest_inputs);
      std::printf("parsed %zu file(s), %zu records (%zu duplicate(s) dropped)\n", out.files,
                  out.records, out.duplicates_dropped);
      std::printf("wrote %s: %zu measurement hours spanning %s .. %s\n", out.dataset_csv.c_str(),
                  out.measurements, out.span_start.c_str(), out.span_end.c_str());
    } else if (fit->parsed()) {
      auto only_kind = parse_kind(kind);
      pvcast::Dataset dataset = pvcast::load_dataset(config);
      auto out = pvcast::run_fit(config, dataset, only_kind);
      for (const auto& w : out.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      if (!out.summary_table.empty()) std::fputs(out.summary_table.c_str(), stdout);
      std::printf("wrote %zu model file(s) and %s\n", out.model_files.size(),
                  out.summary_csv.c_str());
    } else if (evaluate->parsed()) {
      pvcast::Dataset dataset = pvcast::load_dataset(config);
      auto out = pvcast::run_evaluate(config, dataset);
      for (pvcast::Variable v : pvcast::kAllVariables) {
        const auto& models = out.artifacts.reports.at(pvcast::variable_name(v));
        std::printf("%-12s accuracy%%: ar %6.2f  hrrr %6.2f  arx %6.2f\n",
                    pvcast::variable_name(v), models.at("ar").accuracy.overall_pct,
                    models.at("hrrr").accuracy.overall_pct,
                    models.at("arx").accuracy.overall_pct);
      }
      for (const auto& [model, err] : out.artifacts.power.mean_signed_error_w) {
        std::printf("power mean signed RMS error (%s): %.1f W\n", model.c_str(), err);
      }
      std::printf("wrote %zu report file(s) to %s (test index %s)\n", out.files.size(),
                  config.out_dir.c_str(), out.artifacts.test_index_hash.c_str());
    } else if (predict->parsed()) {
      auto k = parse_kind(predict_kind);
      pvcast::Dataset dataset = pvcast::load_dataset(config);
      auto doc = pvcast::run_predict(config, dataset, predict_at,
                                     k.value_or(pvcast::ModelKind::arx));
      std::printf("%s\n", doc.dump(2).c_str());
    }
    return 0;
  } catch (const pvcast::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: Internal: %s\n", e.what());
    return 2;
  }
}
