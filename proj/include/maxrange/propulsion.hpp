// Power-law propulsion: thrust and specific fuel consumption scale with
// powers of the density ratio sigma = rho(h) / rho_sl.
#pragma once

#include "maxrange/atmosphere.hpp"

namespace maxrange {

struct PropulsionModel {
  double t_max_sl = 20000.0;   ///< max continuous thrust at sea level [N]
  double idle_fraction = 0.05; ///< idle thrust as a fraction of t_max_sl
  double thrust_exponent = 1.0;
  double c_sl = 1.9e-4;        ///< specific fuel consumption at sea level [1/s]
  double sfc_exponent = 0.0;
  double power_setting = 0.98; ///< applied to max thrust only

  void validate() const;
};

/// P * t_max_sl * sigma^x_T [N]
double max_thrust(const PropulsionModel& prop, const Atmosphere& atm, double h);

/// d max_thrust / dh [N/m]
double max_thrust_derivative(const PropulsionModel& prop, const Atmosphere& atm, double h);

/// idle_fraction * t_max_sl * sigma^x_T [N], independent of the power setting.
double idle_thrust(const PropulsionModel& prop, const Atmosphere& atm, double h);

/// c_sl * sigma^x_C [1/s]
double sfc(const PropulsionModel& prop, const Atmosphere& atm, double h);

/// d ln(sfc) / dh [1/m]
double sfc_log_derivative(const PropulsionModel& prop, const Atmosphere& atm);

/// -T'(h) / (sqrt(T(h)) C(h) sqrt(rho(h))) for the max-thrust law [m].
///
/// Constant in h whenever x_T = 2 x_C + 1 (the density powers cancel);
/// Hull-type turbojets (x_T = 1, x_C = 0) are in that family.
double design_parameter(const PropulsionModel& prop, const Atmosphere& atm, double h);

}  // namespace maxrange
