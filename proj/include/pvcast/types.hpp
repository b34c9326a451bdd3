#pragma once

#include <array>
#include <optional>
#include <string>

#include "pvcast/error.hpp"
#include "pvcast/time_index.hpp"

namespace pvcast {

/// Weather variable selector.
enum class Variable { irradiance, temperature, wind };

inline constexpr std::array<Variable, 3> kAllVariables{Variable::irradiance, Variable::temperature,
                                                       Variable::wind};

inline const char* variable_name(Variable v) {
  switch (v) {
    case Variable::irradiance:
      return "irradiance";
    case Variable::temperature:
      return "temperature";
    case Variable::wind:
      return "wind";
  }
  return "?";
}

inline const char* variable_unit(Variable v) {
  switch (v) {
    case Variable::irradiance:
      return "W/m^2";
    case Variable::temperature:
      return "K";
    case Variable::wind:
      return "m/s";
  }
  return "?";
}

inline std::optional<Variable> variable_from_name(const std::string& name) {
  for (Variable v : kAllVariables) {
    if (name == variable_name(v)) return v;
  }
  return std::nullopt;
}

/**
 * @brief One site-local weather triple at one hour.
 *
 * Units: downward shortwave irradiance W/m^2, 2 m air temperature K,
 * 10 m wind speed m/s.
 */
struct WeatherSample {
  double irradiance = 0.0;
  double temperature = 0.0;
  double wind = 0.0;

  double value(Variable v) const {
    switch (v) {
      case Variable::irradiance:
        return irradiance;
      case Variable::temperature:
        return temperature;
      case Variable::wind:
        return wind;
    }
    return 0.0;
  }

  /// Physical admissibility: nonnegative irradiance/wind, positive temperature.
  bool valid() const { return irradiance >= 0.0 && temperature > 0.0 && wind >= 0.0; }

  friend bool operator==(const WeatherSample&, const WeatherSample&) = default;
};

/**
 * @brief A weather triple issued at a model cycle with a given lead.
 *
 * Lead 0 is the assimilated analysis and doubles as the measurement.
 * valid_at always equals issued_at + lead_hours.
 */
struct ForecastRecord {
  TimeIndex issued_at;
  int lead_hours = 0;
  TimeIndex valid_at;
  WeatherSample sample;

  static constexpr int kMaxLeadHours = 18;

  bool consistent() const {
    return lead_hours >= 0 && lead_hours <= kMaxLeadHours &&
           valid_at.epoch_hour - issued_at.epoch_hour == lead_hours;
  }

  friend bool operator==(const ForecastRecord& a, const ForecastRecord& b) {
    return a.issued_at == b.issued_at && a.lead_hours == b.lead_hours &&
           a.valid_at == b.valid_at && a.sample == b.sample;
  }
};

/**
 * @brief One regression row for one variable: target, its lagged
 * measurement, and the exogenous forecast valid at the target time.
 */
struct AlignedSample {
  int hour_of_day = 1;  // 1..24
  double target = 0.0;  // measured value at valid_at
  double lag = 0.0;     // measured value lag_hours earlier
  double exog = 0.0;    // forecast valid at valid_at
  TimeIndex valid_at;
};

}  // namespace pvcast
