#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pvcast/align.hpp"
#include "pvcast/error.hpp"
#include "pvcast/ols.hpp"
#include "pvcast/types.hpp"

namespace pvcast {

enum class ModelKind { ar, arx };

inline const char* model_kind_name(ModelKind k) { return k == ModelKind::ar ? "ar" : "arx"; }

inline std::optional<ModelKind> model_kind_from_name(const std::string& name) {
  if (name == "ar") return ModelKind::ar;
  if (name == "arx") return ModelKind::arx;
  return std::nullopt;
}

/**
 * @brief Fitted coefficients for one variable at one hour of day.
 *
 * prediction = alpha * lag + beta * exog + gamma; beta is absent exactly
 * when the model was fitted without the exogenous forecast term (AR).
 * sigma_eps is the sample standard deviation of the training residuals.
 */
struct HourlyModel {
  int hour = 1;  // 1..24
  double alpha = 0.0;
  std::optional<double> beta;
  double gamma = 0.0;
  double sigma_eps = 0.0;
  std::size_t n_train = 0;

  bool is_zero() const {
    return alpha == 0.0 && beta.value_or(0.0) == 0.0 && gamma == 0.0 && sigma_eps == 0.0;
  }

  friend bool operator==(const HourlyModel&, const HourlyModel&) = default;
};

/// Split/range bookkeeping kept with a fitted set; not serialized.
struct FitMetadata {
  double train_fraction = 0.0;
  std::string data_start;  // ISO hour of first training row
  std::string data_end;    // ISO hour of last training row
};

/**
 * @brief The 24 hourly models for one (variable, kind) cell.
 *
 * Equality compares the serialized surface (variable, kind, lag, lead and
 * the 24 models); fit_metadata is informational only.
 */
struct ModelSet {
  Variable variable = Variable::irradiance;
  ModelKind kind = ModelKind::arx;
  int lag_hours = 24;
  int lead_hours = 18;
  std::array<HourlyModel, 24> models{};
  FitMetadata fit_metadata;

  const HourlyModel& model_for_hour(int hour) const { return models.at(hour - 1); }

  friend bool operator==(const ModelSet& a, const ModelSet& b) {
    return a.variable == b.variable && a.kind == b.kind && a.lag_hours == b.lag_hours &&
           a.lead_hours == b.lead_hours && a.models == b.models;
  }
};

/// fit_hourly output: the model set plus per-hour residual diagnostics and
/// any non-fatal warnings (degenerate buckets, dropped regressors, ...).
struct HourlyFit {
  ModelSet set;
  std::array<FitDiagnostics, 24> diagnostics{};
  std::vector<std::string> warnings;
};

namespace detail {

inline double mean_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return v.empty() ? 0.0 : m / static_cast<double>(v.size());
}

inline double variance_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / static_cast<double>(v.size() - 1);
}

}  // namespace detail

/**
 * @brief Fit the 24 hourly models for one variable by least squares.
 *
 * Regressors are (lag, exog, 1) for ARX and (lag, 1) for AR. Buckets whose
 * target is numerically constant at zero (variance < 1e-12 and |mean| <
 * 1e-9, e.g. night irradiance) become the exact zero model. Constant or
 * collinear predictors are dropped one at a time with a warning; when
 * lag and exog are collinear the exogenous term is the one dropped. An
 * empty bucket yields the zero model with n_train = 0.
 */
inline HourlyFit fit_hourly(const HourlyBuckets& buckets, ModelKind kind, Variable variable,
                            int lag_hours = 24, int lead_hours = 18) {
  HourlyFit out;
  out.set.variable = variable;
  out.set.kind = kind;
  out.set.lag_hours = lag_hours;
  out.set.lead_hours = lead_hours;

  const bool with_exog = kind == ModelKind::arx;

  for (int hour = 1; hour <= 24; ++hour) {
    HourlyModel m;
    m.hour = hour;
    if (with_exog) m.beta = 0.0;
    FitDiagnostics diag;

    const auto& rows = buckets.bucket(hour);
    m.n_train = rows.size();

    std::vector<double> target, lag, exog;
    target.reserve(rows.size());
    lag.reserve(rows.size());
    exog.reserve(rows.size());
    for (const auto& r : rows) {
      target.push_back(r.target);
      lag.push_back(r.lag);
      exog.push_back(r.exog);
    }

    if (rows.empty()) {
      out.warnings.push_back("hour " + std::to_string(hour) + ": empty bucket, zero model");
      diag.degenerate = true;
      out.set.models[hour - 1] = m;
      out.diagnostics[hour - 1] = diag;
      continue;
    }

    // Constant-at-zero target: the zero model reproduces it exactly.
    if (detail::variance_of(target) < 1e-12 && std::abs(detail::mean_of(target)) < 1e-9) {
      diag.degenerate = true;
      diag.residuals = target;
      m.sigma_eps = sample_std(diag.residuals);
      out.set.models[hour - 1] = m;
      out.diagnostics[hour - 1] = diag;
      continue;
    }

    // Candidate regressors in fixed order; the intercept is always kept.
    enum { kLag, kExog };
    std::vector<int> active;
    active.push_back(kLag);
    if (with_exog) active.push_back(kExog);

    auto column = [&](int which) -> const std::vector<double>& {
      return which == kLag ? lag : exog;
    };

    // Constant columns duplicate the intercept; drop them up front.
    for (auto it = active.begin(); it != active.end();) {
      if (detail::variance_of(column(*it)) < 1e-12) {
        out.warnings.push_back("hour " + std::to_string(hour) + ": constant " +
                               (*it == kLag ? std::string("lag") : std::string("exog")) +
                               " regressor dropped");
        it = active.erase(it);
      } else {
        ++it;
      }
    }

    while (true) {
      if (rows.size() < active.size() + 1) {
        if (!active.empty()) {
          out.warnings.push_back("hour " + std::to_string(hour) +
                                 ": underdetermined, dropping regressor");
          active.pop_back();
          continue;
        }
      }
      std::vector<RegressionRow> reg(rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int which : active) reg[i].predictors.push_back(column(which)[i]);
        reg[i].predictors.push_back(1.0);
        reg[i].target = target[i];
      }
      try {
        OlsFit fit = fit_ols(reg);
        std::size_t at = 0;
        for (int which : active) {
          if (which == kLag) m.alpha = fit.coefficients[at];
          if (which == kExog) m.beta = fit.coefficients[at];
          ++at;
        }
        m.gamma = fit.coefficients[at];
        m.sigma_eps = fit.sigma;
        diag.residuals = std::move(fit.diagnostics.residuals);
        diag.condition_warning = fit.diagnostics.condition_warning;
        break;
      } catch (const SingularError&) {
        if (active.empty()) throw;  // intercept alone cannot be singular here
        // Collinear predictors: prefer keeping the lag term.
        int dropped = active.back();
        active.pop_back();
        out.warnings.push_back("hour " + std::to_string(hour) + ": collinear " +
                               (dropped == kLag ? std::string("lag") : std::string("exog")) +
                               " regressor dropped");
      } catch (const UnderdeterminedError&) {
        if (active.empty()) throw;
        active.pop_back();
        out.warnings.push_back("hour " + std::to_string(hour) +
                               ": underdetermined, dropping regressor");
      }
    }

    out.set.models[hour - 1] = m;
    out.diagnostics[hour - 1] = diag;
  }
  return out;
}

/**
 * @brief Linear prediction without the physical floor.
 */
inline double predict_linear(const ModelSet& set, int hour, double lag_value,
                             std::optional<double> exog_value) {
  const HourlyModel& m = set.model_for_hour(hour);
  if (set.kind == ModelKind::arx) {
    if (!exog_value.has_value()) {
      throw MissingExogenousError("ARX prediction for hour " + std::to_string(hour) +
                                  " requires an exogenous forecast value");
    }
    return m.alpha * lag_value + m.beta.value_or(0.0) * *exog_value + m.gamma;
  }
  return m.alpha * lag_value + m.gamma;
}

/**
 * @brief Predict one value; irradiance and wind are floored at zero,
 * temperature is not.
 */
inline double predict(const ModelSet& set, int hour, double lag_value,
                      std::optional<double> exog_value) {
  double value = predict_linear(set, hour, lag_value, exog_value);
  if (set.variable != Variable::temperature) value = std::max(0.0, value);
  return value;
}

/// Overload deriving the hour bucket from the target time.
inline double predict(const ModelSet& set, const TimeIndex& target_time, double lag_value,
                      std::optional<double> exog_value) {
  return predict(set, hour_of_day(target_time), lag_value, exog_value);
}

inline constexpr int kModelSchemaVersion = 1;

/**
 * @brief Serialize a model set as schema-versioned JSON.
 *
 * Fields: {schema_version, variable, kind, lag, lead,
 * models:[{hour, alpha, beta?, gamma, sigma_eps, n_train}]}.
 */
inline void save_models(const ModelSet& set, const std::filesystem::path& path) {
  nlohmann::json doc;
  doc["schema_version"] = kModelSchemaVersion;
  doc["variable"] = variable_name(set.variable);
  doc["kind"] = model_kind_name(set.kind);
  doc["lag"] = set.lag_hours;
  doc["lead"] = set.lead_hours;
  auto& models = doc["models"] = nlohmann::json::array();
  for (const auto& m : set.models) {
    nlohmann::json jm;
    jm["hour"] = m.hour;
    jm["alpha"] = m.alpha;
    if (set.kind == ModelKind::arx) jm["beta"] = m.beta.value_or(0.0);
    jm["gamma"] = m.gamma;
    jm["sigma_eps"] = m.sigma_eps;
    jm["n_train"] = m.n_train;
    models.push_back(std::move(jm));
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw IoError("short write to '" + path.string() + "'");
}

/**
 * @brief Load a model set, validating schema version and shape.
 *
 * @throws VersionMismatchError on an unknown schema_version.
 * @throws CorruptFileError on parse failures or structural violations
 *         (wrong model count, duplicate hours, beta presence not matching
 *         the kind, negative sigma_eps, ...).
 */
inline ModelSet load_models(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelNotFoundError("cannot open '" + path.string() + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptFileError("'" + path.string() + "': " + e.what());
  }

  try {
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer()) {
      throw CorruptFileError("'" + path.string() + "': missing schema_version");
    }
    if (doc["schema_version"].get<int>() != kModelSchemaVersion) {
      throw VersionMismatchError("'" + path.string() + "': schema_version " +
                                 doc["schema_version"].dump() + ", expected " +
                                 std::to_string(kModelSchemaVersion));
    }
    ModelSet set;
    auto var = variable_from_name(doc.at("variable").get<std::string>());
    auto kind = model_kind_from_name(doc.at("kind").get<std::string>());
    if (!var || !kind) throw CorruptFileError("'" + path.string() + "': bad variable or kind");
    set.variable = *var;
    set.kind = *kind;
    set.lag_hours = doc.at("lag").get<int>();
    set.lead_hours = doc.at("lead").get<int>();
    const auto& models = doc.at("models");
    if (!models.is_array() || models.size() != 24) {
      throw CorruptFileError("'" + path.string() + "': expected exactly 24 models");
    }
    std::array<bool, 24> seen{};
    for (const auto& jm : models) {
      HourlyModel m;
      m.hour = jm.at("hour").get<int>();
      if (m.hour < 1 || m.hour > 24 || seen[m.hour - 1]) {
        throw CorruptFileError("'" + path.string() + "': bad or duplicate hour");
      }
      seen[m.hour - 1] = true;
      m.alpha = jm.at("alpha").get<double>();
      if (set.kind == ModelKind::arx) {
        m.beta = jm.at("beta").get<double>();
      } else if (jm.contains("beta")) {
        throw CorruptFileError("'" + path.string() + "': AR model carries a beta");
      }
      m.gamma = jm.at("gamma").get<double>();
      m.sigma_eps = jm.at("sigma_eps").get<double>();
      if (m.sigma_eps < 0.0) throw CorruptFileError("'" + path.string() + "': sigma_eps < 0");
      m.n_train = jm.at("n_train").get<std::size_t>();
      set.models[m.hour - 1] = m;
    }
    return set;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptFileError("'" + path.string() + "': " + e.what());
  }
}

}  // namespace pvcast
