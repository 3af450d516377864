#include "maxrange/propulsion.hpp"

#include <cmath>

#include <fmt/format.h>

#include "maxrange/error.hpp"

namespace maxrange {

void PropulsionModel::validate() const {
  if (!(t_max_sl > 0.0)) throw ConfigError(fmt::format("propulsion: t_max_sl must be positive, got {}", t_max_sl));
  if (!(idle_fraction > 0.0 && idle_fraction < 1.0)) {
    throw ConfigError(fmt::format("propulsion: idle_fraction must lie in (0, 1), got {}", idle_fraction));
  }
  if (!(c_sl > 0.0)) throw ConfigError(fmt::format("propulsion: c_sl must be positive, got {}", c_sl));
  if (!(power_setting > 0.0 && power_setting <= 1.0)) {
    throw ConfigError(fmt::format("propulsion: power_setting must lie in (0, 1], got {}", power_setting));
  }
  if (!(idle_fraction < power_setting)) {
    throw ConfigError("propulsion: idle thrust must stay below max thrust (idle_fraction < power_setting)");
  }
  if (!std::isfinite(thrust_exponent) || !std::isfinite(sfc_exponent)) {
    throw ConfigError("propulsion: exponents must be finite");
  }
}

double max_thrust(const PropulsionModel& prop, const Atmosphere& atm, double h) {
  return prop.power_setting * prop.t_max_sl * std::pow(atm.density_ratio(h), prop.thrust_exponent);
}

double max_thrust_derivative(const PropulsionModel& prop, const Atmosphere& atm, double h) {
  return max_thrust(prop, atm, h) * prop.thrust_exponent * atm.density_log_derivative();
}

double idle_thrust(const PropulsionModel& prop, const Atmosphere& atm, double h) {
  return prop.idle_fraction * prop.t_max_sl * std::pow(atm.density_ratio(h), prop.thrust_exponent);
}

double sfc(const PropulsionModel& prop, const Atmosphere& atm, double h) {
  return prop.c_sl * std::pow(atm.density_ratio(h), prop.sfc_exponent);
}

double sfc_log_derivative(const PropulsionModel& prop, const Atmosphere& atm) {
  return prop.sfc_exponent * atm.density_log_derivative();
}

double design_parameter(const PropulsionModel& prop, const Atmosphere& atm, double h) {
  const double thrust = max_thrust(prop, atm, h);
  return -max_thrust_derivative(prop, atm, h) /
         (std::sqrt(thrust) * sfc(prop, atm, h) * std::sqrt(atm.density(h)));
}

}  // namespace maxrange
