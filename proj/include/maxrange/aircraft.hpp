#pragma once

#include <string>

#include "maxrange/aero.hpp"
#include "maxrange/atmosphere.hpp"
#include "maxrange/propulsion.hpp"

namespace maxrange {

/// Invariant physical description of the airplane and its environment.
struct AircraftModel {
  std::string name = "SBJ";
  double wing_area = 21.6;  ///< [m^2]
  DragPolar polar;
  double r_stall = 0.8;     ///< lowest admissible pressure ratio
  Atmosphere atmosphere;
  PropulsionModel propulsion;

  void validate() const;

  double density(double h) const { return atmosphere.density(h); }
  double max_thrust(double h) const { return maxrange::max_thrust(propulsion, atmosphere, h); }
  double idle_thrust(double h) const { return maxrange::idle_thrust(propulsion, atmosphere, h); }
  double sfc(double h) const { return maxrange::sfc(propulsion, atmosphere, h); }
  double speed(double r, double h, double w) const { return speed_from_r(atmosphere, r, h, w, wing_area); }
  double pressure_ratio(double v, double h, double w) const {
    return maxrange::pressure_ratio(atmosphere, v, h, w, wing_area);
  }
  double stall_speed(double w, double h) const {
    return maxrange::stall_speed(atmosphere, r_stall, w, h, wing_area);
  }
};

/// A business-jet-like sample. The drag polar is the published SBJ polar;
/// thrust and fuel-flow constants are plausible inputs, not measured data.
AircraftModel sample_business_jet();

}  // namespace maxrange
