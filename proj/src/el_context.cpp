#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "maxrange/error.hpp"
#include "maxrange/oracle.hpp"
#include "maxrange/segments.hpp"
#include "segment_builder.hpp"

namespace maxrange {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kCertificationTolerance = 1e-7;
constexpr double kGuardAngle = 30.0 * kDeg;
constexpr double kMinCurvatureRatio = 1e-3;

}  // namespace

ELContext::ELContext(const AircraftModel& aircraft) : aircraft_(aircraft) {
  aircraft_.validate();
  f_log_derivative_ = sfc_log_derivative(aircraft_.propulsion, aircraft_.atmosphere) +
                      0.5 * aircraft_.atmosphere.density_log_derivative();

  std::vector<double> grid;
  for (int d = -15; d <= 25; ++d) grid.push_back(std::tan(d * kDeg));
  const auto g_fn = [this](double p) { return g(p); };
  const auto g1_fn = [this](double p) { return g1(p); };
  const auto g2_fn = [this](double p) { return g2(p); };
  const auto first = oracle::finite_difference_check(g_fn, g1_fn, grid, kCertificationTolerance);
  const auto second = oracle::finite_difference_check(g1_fn, g2_fn, grid, kCertificationTolerance);
  certification_deviation_ = std::max(first.max_deviation, second.max_deviation);
  if (!first.passed || !second.passed) {
    throw DomainError(fmt::format("Euler-Lagrange derivative certification failed (G': {:.3g} at h' = {:.4f}, "
                                  "G'': {:.3g} at h' = {:.4f})",
                                  first.max_deviation, first.worst_x, second.max_deviation, second.worst_x));
  }
}

double ELContext::f(double h) const {
  return -std::sqrt(aircraft_.wing_area) * aircraft_.sfc(h) * std::sqrt(aircraft_.density(h)) / std::numbers::sqrt2;
}

ELContext::Terms ELContext::evaluate(double slope) const {
  const double cd0 = aircraft_.polar.cd0;
  const double k = aircraft_.polar.k;
  const double gamma = std::atan(slope);
  const double s = std::sin(gamma);
  const double c = std::cos(gamma);
  const double a = 12.0 * k * cd0;
  const double d = std::sqrt(s * s + a * c * c);
  const double r = (s + d) / (2.0 * cd0);
  const double r_prime = c * (1.0 + s * (1.0 - a) / d) / (2.0 * cd0);

  const double rh = std::sqrt(r);
  const double r32 = r * rh;
  const double r52 = r32 * r;

  // phi(gamma) = tau / sqrt(R) along R = R_gamma; dphi/dR vanishes there.
  const double phi = cd0 * rh + k * c * c / r32 + s / rh;
  const double phi1 = -2.0 * k * c * s / r32 + c / rh;
  const double f_gg = -2.0 * k * (c * c - s * s) / r32 - s / rh;
  const double f_gr = 3.0 * k * c * s / r52 - 0.5 * c / r32;
  const double phi2 = f_gg + f_gr * r_prime;

  const double g0 = phi / c;
  const double gd1 = phi1 / c + phi * s / (c * c);
  const double gd2 = phi2 / c + 2.0 * phi1 * s / (c * c) + phi * (1.0 / c + 2.0 * s * s / (c * c * c));

  const double c2 = c * c;
  return {g0, gd1 * c2, gd2 * c2 * c2 - 2.0 * gd1 * s * c2 * c};
}

double ELContext::g(double slope) const { return evaluate(slope).g; }
double ELContext::g1(double slope) const { return evaluate(slope).g1; }
double ELContext::g2(double slope) const { return evaluate(slope).g2; }

double ELContext::curvature(double slope) const {
  const Terms t = evaluate(slope);
  return f_log_derivative_ * (t.g - t.g1 * slope) / t.g2;
}

ELPath el_transition_path(const ELContext& context, const FlightState& start, const StopConditions& stops,
                          const SolverSettings& settings) {
  const std::string name{phase_name(Phase::ELTransition)};
  const AircraftModel& aircraft = context.aircraft();
  const DragPolar& polar = aircraft.polar;
  if (!(start.w > 0.0)) throw DomainError(fmt::format("initial weight must be positive, got {}", start.w));

  const double p0 = std::tan(start.gamma);
  const double g2_ref = std::abs(context.g2(0.0));
  if (!(std::abs(context.g2(p0)) > kMinCurvatureRatio * g2_ref)) {
    throw PlanningError(name, fmt::format("G'' vanishes at the initial path angle {:.3f} deg", start.gamma / kDeg));
  }
  if (!(std::abs(start.gamma) < kGuardAngle)) {
    throw PlanningError(name, fmt::format("initial path angle {:.3f} deg outside +-30 deg", start.gamma / kDeg));
  }

  detail::SegmentModel model;
  model.phase = Phase::ELTransition;
  model.aircraft = &aircraft;
  model.rhs = [&](double, std::span<const double> y, std::span<double> dydx) {
    const double h = y[0];
    const double p = y[1];
    const double w = 0.25 * y[2] * y[2];
    const double gamma = std::atan(p);
    const double r = r_gamma(polar, gamma);
    dydx[0] = p;
    dydx[1] = context.curvature(p);
    dydx[2] = context.dz_dx(h, p);
    dydx[3] = 1.0 / (aircraft.speed(r, h, w) * std::cos(gamma));
  };
  model.sample = [&](double x, std::span<const double> y) {
    const double w = 0.25 * y[2] * y[2];
    const double gamma = std::atan(y[1]);
    const double r = r_gamma(polar, gamma);
    return detail::make_sample(aircraft, x, y[0], w, gamma, r, tau(polar, gamma) * w, y[3],
                               settings.feasibility_slack);
  };
  model.guards.push_back({[](double, std::span<const double> y) { return std::abs(std::atan(y[1])) - kGuardAngle; },
                          ode::Crossing::Rising, 1.0, true});
  model.on_guard = [&](std::size_t, const SegmentSample& last) {
    throw PlanningError(name, fmt::format("path angle reached {:.1f} deg at x = {:.1f} km, h = {:.1f} m before any "
                                          "stop condition; G'' = {:.4g} is approaching zero",
                                          last.state.gamma / kDeg, last.state.x / 1000.0, last.state.h,
                                          context.g2(std::tan(last.state.gamma))));
  };

  const ode::Vector initial{start.h, p0, 2.0 * std::sqrt(start.w), 0.0};
  if (!model.sample(start.x, initial).feasible) {
    throw PlanningError(name, fmt::format("infeasible thrust at the start (h = {:.1f} m, gamma = {:.3f} deg)", start.h,
                                          start.gamma / kDeg));
  }
  try {
    auto built = detail::build_segment(model, initial, start.x, stops, settings);
    return {std::move(built.segment), std::move(built.path)};
  } catch (const IntegrationError& e) {
    throw PlanningError(name, fmt::format("{}; the path approaches the G'' singularity, use a shorter span", e.what()));
  }
}

Segment el_transition(const ELContext& context, const FlightState& start, const StopConditions& stops,
                      const SolverSettings& settings) {
  return el_transition_path(context, start, stops, settings).segment;
}

}  // namespace maxrange
