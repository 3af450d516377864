#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "maxrange/error.hpp"
#include "maxrange/segments.hpp"
#include "segment_builder.hpp"

namespace maxrange {

SpeedLaw SpeedLaw::constant_ias(const Atmosphere& atm, double v_ias) {
  if (!(v_ias > 0.0)) throw DomainError(fmt::format("indicated airspeed must be positive, got {}", v_ias));
  const double half_scale = 0.5 / atm.scale_height;
  return {[atm, v_ias](double h) { return atm.kias_to_tas(v_ias, h); },
          [atm, v_ias, half_scale](double h) { return atm.kias_to_tas(v_ias, h) * half_scale; }};
}

SpeedRestrictedLagrangian::SpeedRestrictedLagrangian(const AircraftModel& aircraft, SpeedLaw law)
    : aircraft_(aircraft), law_(std::move(law)) {
  if (!law_.tas || !law_.tas_derivative) throw DomainError("speed law needs tas and its derivative");
}

double SpeedRestrictedLagrangian::u_of(double h) const {
  const double v = law_.tas(h);
  return 0.5 * aircraft_.density(h) * v * v * aircraft_.wing_area;
}

double SpeedRestrictedLagrangian::u_derivative(double h) const {
  const double v = law_.tas(h);
  const double rho = aircraft_.density(h);
  const double drho = rho * aircraft_.atmosphere.density_log_derivative();
  return (0.5 * drho * v * v + rho * v * law_.tas_derivative(h)) * aircraft_.wing_area;
}

double SpeedRestrictedLagrangian::a_of(double h) const { return aircraft_.sfc(h) / law_.tas(h); }

double SpeedRestrictedLagrangian::a_log_derivative(double h) const {
  return sfc_log_derivative(aircraft_.propulsion, aircraft_.atmosphere) - law_.tas_derivative(h) / law_.tas(h);
}

double SpeedRestrictedLagrangian::value(double w, double h, double v) const {
  const double cd0 = aircraft_.polar.cd0;
  const double k = aircraft_.polar.k;
  const double u = u_of(h);
  const double s = std::sqrt(1.0 + v * v);
  return a_of(h) * (cd0 * u * s + k * w * w / (u * s) + w * v);
}

double SpeedRestrictedLagrangian::d_h(double w, double h, double v) const {
  const double cd0 = aircraft_.polar.cd0;
  const double k = aircraft_.polar.k;
  const double u = u_of(h);
  const double du = u_derivative(h);
  const double s = std::sqrt(1.0 + v * v);
  const double a = a_of(h);
  const double b = cd0 * u * s + k * w * w / (u * s) + w * v;
  return a * a_log_derivative(h) * b + a * (cd0 * du * s - k * w * w * du / (u * u * s));
}

double SpeedRestrictedLagrangian::d_v(double w, double h, double v) const {
  const double cd0 = aircraft_.polar.cd0;
  const double k = aircraft_.polar.k;
  const double u = u_of(h);
  const double s = std::sqrt(1.0 + v * v);
  return a_of(h) * (cd0 * u * v / s - k * w * w * v / (u * s * s * s) + w);
}

double SpeedRestrictedLagrangian::d_vv(double w, double h, double v) const {
  const double cd0 = aircraft_.polar.cd0;
  const double k = aircraft_.polar.k;
  const double u = u_of(h);
  const double s = std::sqrt(1.0 + v * v);
  const double s3 = s * s * s;
  return a_of(h) * (cd0 * u / s3 - k * w * w * (1.0 - 2.0 * v * v) / (u * s3 * s * s));
}

double SpeedRestrictedLagrangian::d_vh(double w, double h, double v) const {
  const double cd0 = aircraft_.polar.cd0;
  const double k = aircraft_.polar.k;
  const double u = u_of(h);
  const double du = u_derivative(h);
  const double s = std::sqrt(1.0 + v * v);
  const double s3 = s * s * s;
  const double a = a_of(h);
  const double b_v = cd0 * u * v / s - k * w * w * v / (u * s3) + w;
  return a * a_log_derivative(h) * b_v + a * (cd0 * du * v / s + k * w * w * du * v / (u * u * s3));
}

double SpeedRestrictedLagrangian::slope_rate(double w, double h, double v) const {
  const double lvv = d_vv(w, h, v);
  if (!(lvv > 0.0)) {
    throw PlanningError(std::string(phase_name(Phase::SpeedRestrictedEL)),
                        fmt::format("loss of convexity: L_vv = {:.4g} at h = {:.1f} m", lvv, h));
  }
  return (d_h(w, h, v) - d_vh(w, h, v) * v) / lvv;
}

namespace {

void require_law(const SpeedLaw& law) {
  if (!law.tas || !law.tas_derivative) throw DomainError("speed law needs tas and its derivative");
}

}  // namespace

Segment speed_restricted_max_thrust(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law,
                                    const StopConditions& stops, const SolverSettings& settings) {
  require_law(law);
  const std::string name{phase_name(Phase::SpeedRestrictedMaxThrust)};
  const DragPolar& polar = aircraft.polar;
  const SpeedRestrictedLagrangian lagrangian(aircraft, law);

  const auto geometry = [&](double h, double w) {
    const double r = lagrangian.u_of(h) / w;
    if (!(r >= aircraft.r_stall)) {
      throw PlanningError(name, fmt::format("speed below stall at {:.1f} m (R = {:.4f})", h, r));
    }
    const double thrust = aircraft.max_thrust(h);
    try {
      return std::tuple{gamma_fixed_r_thrust(polar, r, thrust / w), r, thrust};
    } catch (const DomainError& e) {
      throw PlanningError(name, fmt::format("infeasible at altitude {:.1f} m: {}", h, e.what()));
    }
  };

  detail::SegmentModel model;
  model.phase = Phase::SpeedRestrictedMaxThrust;
  model.aircraft = &aircraft;
  model.rhs = [&](double, std::span<const double> y, std::span<double> dydx) {
    const auto [gamma, r, thrust] = geometry(y[0], y[1]);
    const double c = std::cos(gamma);
    const double v = law.tas(y[0]);
    dydx[0] = std::tan(gamma);
    dydx[1] = -aircraft.sfc(y[0]) * thrust / (v * c);
    dydx[2] = 1.0 / (v * c);
  };
  model.sample = [&](double x, std::span<const double> y) {
    const auto [gamma, r, thrust] = geometry(y[0], y[1]);
    return detail::make_sample(aircraft, x, y[0], y[1], gamma, r, thrust, y[2], settings.feasibility_slack);
  };
  return detail::build_segment(model, {start.h, start.w, 0.0}, start.x, stops, settings).segment;
}

Segment speed_restricted_el(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law,
                            const StopConditions& stops, double ceiling, double ceiling_margin,
                            const SolverSettings& settings) {
  require_law(law);
  const std::string name{phase_name(Phase::SpeedRestrictedEL)};
  if (!(start.h < ceiling)) {
    throw PlanningError(name, fmt::format("start {:.1f} m is not below the ceiling {:.1f} m", start.h, ceiling));
  }
  const DragPolar& polar = aircraft.polar;
  const SpeedRestrictedLagrangian lagrangian(aircraft, law);

  detail::SegmentModel model;
  model.phase = Phase::SpeedRestrictedEL;
  model.aircraft = &aircraft;
  model.rhs = [&](double, std::span<const double> y, std::span<double> dydx) {
    const double h = y[0];
    const double v = y[1];
    const double w = y[2];
    dydx[0] = v;
    dydx[1] = lagrangian.slope_rate(w, h, v);
    dydx[2] = -lagrangian.value(w, h, v);
    dydx[3] = std::sqrt(1.0 + v * v) / law.tas(h);
  };
  model.sample = [&](double x, std::span<const double> y) {
    const double h = y[0];
    const double w = y[2];
    const double gamma = std::atan(y[1]);
    const double r = lagrangian.u_of(h) / w;
    const double thrust = thrust_ratio(polar, r, gamma) * w;
    return detail::make_sample(aircraft, x, h, w, gamma, r, thrust, y[3], settings.feasibility_slack);
  };
  const double limit = ceiling + ceiling_margin;
  model.guards.push_back(
      {[limit](double, std::span<const double> y) { return y[0] - limit; }, ode::Crossing::Rising, 1.0, true});
  model.on_guard = [&](std::size_t, const SegmentSample& last) {
    throw PlanningError(name, fmt::format("ceiling exceeded: climbed through {:.1f} m at x = {:.1f} m",
                                          last.state.h, last.state.x));
  };

  const ode::Vector initial{start.h, std::tan(start.gamma), start.w, 0.0};
  return detail::build_segment(model, initial, start.x, stops, settings).segment;
}

}  // namespace maxrange
