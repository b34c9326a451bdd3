#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "pvcast/error.hpp"

namespace pvcast {

/**
 * @brief Linear PV plant model: P = eta * S * I * [1 - c * (T - t_ref)].
 *
 * Defaults describe a medium-office rooftop array (16% efficiency over
 * ~1660 m^2, i.e. 265.6 kW at 1000 W/m^2 and reference temperature).
 * Note the default temperature coefficient is 0.05 1/K; the bracket hits
 * zero 20 K above reference, and negative values are floored by default.
 */
struct PlantConfig {
  double eta = 0.16;
  double area_m2 = 1660.0;
  double temp_coeff = 0.05;  // 1/K
  double t_ref = 298.15;     // K
  bool floor_at_zero = true;

  void validate() const {
    if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta must be in (0,1]");
    if (!(area_m2 > 0.0)) throw ConfigError("area_m2 must be > 0");
    if (!(t_ref > 0.0)) throw ConfigError("t_ref must be > 0");
  }
};

/// Map one (irradiance, temperature) pair to array output in watts.
inline double power(const PlantConfig& plant, double irradiance_wm2, double temperature_k) {
  double p = plant.eta * plant.area_m2 * irradiance_wm2 *
             (1.0 - plant.temp_coeff * (temperature_k - plant.t_ref));
  if (plant.floor_at_zero) p = std::max(0.0, p);
  return p;
}

/// Elementwise power map over an (I, T) series; length preserved.
inline std::vector<double> power_series(const PlantConfig& plant,
                                        const std::vector<std::pair<double, double>>& weather) {
  std::vector<double> out;
  out.reserve(weather.size());
  for (const auto& [irr, temp] : weather) out.push_back(power(plant, irr, temp));
  return out;
}

}  // namespace pvcast
