// Closed-form quasi-steady flight algebra in terms of the pressure ratio
//
//   R = (rho V^2 / 2) / (W / S)
//
// which folds speed, altitude, weight and wing area into one dimensionless
// number. Everything here depends on the drag polar only, except the
// speed conversions which also need density, weight and wing area.
//
// Angles are radians throughout.
#pragma once

#include <optional>

#include "maxrange/atmosphere.hpp"

namespace maxrange {

/// C_D = cd0 + k C_L^2
struct DragPolar {
  double cd0 = 0.024;
  double k = 0.073;

  /// Requires cd0 > 0, k > 0 and 12 k cd0 < 1.
  void validate() const;
};

struct AeroState {
  double r = 0.0;
  double gamma = 0.0;
  double cl = 0.0;
  double cd = 0.0;
  double lift_over_w = 0.0;
  double drag_over_w = 0.0;
  std::optional<double> v;  ///< true airspeed [m/s], when weight/altitude/area are known
};

double pressure_ratio(const Atmosphere& atm, double v, double h, double w, double s);

/// Inverse of pressure_ratio: V = sqrt(2 R W / (rho S)).
double speed_from_r(const Atmosphere& atm, double r, double h, double w, double s);

AeroState state_from_r(const DragPolar& polar, double r, double gamma);

/// T/W = cd0 R + k cos^2(gamma) / R + sin(gamma)
double thrust_ratio(const DragPolar& polar, double r, double gamma);

/// Pressure ratio maximizing L/D at path angle gamma.
double r_ld(const DragPolar& polar, double gamma);

/// Smallest T/W that can hold path angle gamma; attained at r_ld(gamma).
double min_thrust_ratio(const DragPolar& polar, double gamma);

/// Range-optimal pressure ratio for level flight, sqrt(3) r_ld(0).
double r_zero(const DragPolar& polar);

/// Range-optimal pressure ratio at path angle gamma (positive root).
double r_gamma(const DragPolar& polar, double gamma);

/// T/W needed to fly gamma at r_gamma(gamma). Strictly increasing in gamma.
double tau(const DragPolar& polar, double gamma);

/// Inverse of tau. Accepts 0 <= t <= 1.
double gamma_from_thrust(const DragPolar& polar, double t);

/// Inverse of r_gamma: the path angle for which r is range-optimal.
double gamma_from_r(const DragPolar& polar, double r);

/// Path angle at fixed pressure ratio r and thrust ratio t (solves thrust_ratio(r, gamma) = t).
/// Throws DomainError when the thrust cannot sustain flight at this R.
double gamma_fixed_r_thrust(const DragPolar& polar, double r, double t);

double stall_speed(const Atmosphere& atm, double r_stall, double w, double h, double s);

}  // namespace maxrange
