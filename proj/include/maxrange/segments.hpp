// Trajectory-piece integrators. Every piece is integrated over distance x and
// returned as a densely resampled Segment carrying the derived quantities
// (speed, thrust, lift coefficient, elapsed time) at each sample.
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "maxrange/aircraft.hpp"
#include "maxrange/odekit.hpp"

namespace maxrange {

struct FlightState {
  double x = 0.0;      ///< distance [m]
  double h = 0.0;      ///< altitude [m]
  double w = 0.0;      ///< weight [N]
  double gamma = 0.0;  ///< path angle [rad]
  double r = 0.0;      ///< pressure ratio
};

enum class Phase {
  PlanFollowing,
  MaxThrustClimb,
  ELTransition,
  ContinuousDescent,
  SpeedRestrictedMaxThrust,
  SpeedRestrictedEL,
  LevelChange,
  LevelCruise,
  AccelerationMarker,
};

std::string_view phase_name(Phase phase);

struct SegmentSample {
  FlightState state;
  double v = 0.0;                  ///< true airspeed [m/s]
  double thrust = 0.0;             ///< [N]
  double thrust_ratio = 0.0;       ///< T / W
  double cl = 0.0;
  double time = 0.0;               ///< [s] since segment start
  double fuel_per_distance = 0.0;  ///< -dW/dx [N/m]
  bool feasible = true;            ///< idle <= T <= max (within slack)
};

struct Segment {
  Phase phase = Phase::PlanFollowing;
  std::vector<SegmentSample> samples;
  std::size_t stop_index = 0;  ///< which stop condition ended the segment

  const SegmentSample& front() const { return samples.front(); }
  const SegmentSample& back() const { return samples.back(); }
  double fuel_burned() const { return samples.front().state.w - samples.back().state.w; }
  double distance() const { return samples.back().state.x - samples.front().state.x; }
  double duration() const { return samples.back().time - samples.front().time; }
  bool all_feasible() const;
};

struct SolverSettings {
  double rtol = 1e-9;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();  ///< integrator step cap [m]
  double sample_spacing = 250.0;       ///< output resampling [m]
  double feasibility_slack = 1e-6;     ///< on T/W bounds
  double max_segment_distance = 2.0e7; ///< guard when no AtDistance stop is given [m]
};

// Stop conditions ----------------------------------------------------------

struct AtDistance {
  double x;
};
struct AtAltitude {
  double h;
};
/// gamma = 0 crossing.
struct AtLevelFlight {};
/// Segment thrust falls to idle thrust.
struct AtIdleThrust {};
struct Monitored {
  std::function<double(const SegmentSample&)> fn;
  ode::Crossing crossing = ode::Crossing::Either;
  double scale = 1.0;
};

using StopCondition = std::variant<AtDistance, AtAltitude, AtLevelFlight, AtIdleThrust, Monitored>;
using StopConditions = std::vector<StopCondition>;

// Pressure-ratio strategies -------------------------------------------------

struct OptimalRange {};
struct MaxLiftDrag {};
struct FixedR {
  double r;
};
using RStrategy = std::variant<OptimalRange, MaxLiftDrag, FixedR>;

double select_r(const DragPolar& polar, const RStrategy& strategy, double gamma);

/// A flight plan h(x) with its slope.
struct FlightPlan {
  std::function<double(double)> altitude;
  std::function<double(double)> slope;

  static FlightPlan level(double h);
  static FlightPlan constant_angle(double x0, double h0, double gamma);
};

enum class WeightEquation {
  ZSubstitution,  ///< integrate Z = 2 sqrt(W)
  Direct,         ///< integrate dW/dx
};

/// Follows a prescribed plan h(x) with the pressure ratio set by `strategy`.
/// Thrust feasibility is flagged per sample, not enforced.
Segment integrate_plan(const AircraftModel& aircraft, const FlightPlan& plan, double w0, const RStrategy& strategy,
                       double x_begin, double x_end, const SolverSettings& settings = {},
                       WeightEquation equation = WeightEquation::ZSubstitution);

/// Range-optimal flight at a prescribed thrust law T(h): at every point
/// gamma = gamma_from_thrust(T(h)/W) and R = r_gamma(gamma).
Segment climb_prescribed_thrust(const AircraftModel& aircraft, const FlightState& start,
                                const std::function<double(double h)>& thrust_law, const StopConditions& stops,
                                const SolverSettings& settings = {}, Phase phase = Phase::MaxThrustClimb);

/// Idle-thrust range-optimal descent to h_target.
Segment continuous_descent(const AircraftModel& aircraft, const FlightState& start, double h_target,
                           const SolverSettings& settings = {});

// Euler-Lagrange machinery ---------------------------------------------------

/// Factorization dZ/dx = F(h) G(h') of the fuel integrand under the
/// range-optimal speed assignment, with exact derivatives of G.
class ELContext {
 public:
  /// Certifies G' and G'' against finite differences on a path-angle grid;
  /// throws DomainError if the certification fails.
  explicit ELContext(const AircraftModel& aircraft);

  double f(double h) const;
  /// F'(h) / F(h): constant for exponential density and power-law SFC.
  double f_log_derivative() const noexcept { return f_log_derivative_; }

  double g(double slope) const;
  double g1(double slope) const;  ///< dG/dh'
  double g2(double slope) const;  ///< d2G/dh'2

  /// h'' from the Euler-Lagrange equation of  min  integral F(h) G(h') dx.
  double curvature(double slope) const;

  double dz_dx(double h, double slope) const { return f(h) * g(slope); }

  /// Largest relative deviation seen during certification.
  double certification_deviation() const noexcept { return certification_deviation_; }

  const AircraftModel& aircraft() const noexcept { return aircraft_; }

 private:
  struct Terms {
    double g, g1, g2;
  };
  Terms evaluate(double slope) const;

  AircraftModel aircraft_;
  double f_log_derivative_ = 0.0;
  double certification_deviation_ = 0.0;
};

/// Euler-Lagrange path from `start` (x, h, w, gamma). Weight follows
/// dZ/dx = F(h) G(h'), i.e. the range-optimal pressure ratio r_gamma.
Segment el_transition(const ELContext& context, const FlightState& start, const StopConditions& stops,
                      const SolverSettings& settings = {});

/// Euler-Lagrange state along the path, for residual checks.
struct ELPath {
  Segment segment;
  ode::SolutionPath path;  ///< state (h, h', Z, t)
};
ELPath el_transition_path(const ELContext& context, const FlightState& start, const StopConditions& stops,
                          const SolverSettings& settings = {});

// Speed-restricted flight ----------------------------------------------------

/// Prescribed true airspeed as a function of altitude.
struct SpeedLaw {
  std::function<double(double h)> tas;
  std::function<double(double h)> tas_derivative;

  /// Constant indicated airspeed (taken as equivalent airspeed).
  static SpeedLaw constant_ias(const Atmosphere& atm, double v_ias);
};

/// L(W, h, v) = (C(h)/V_F(h)) (cd0 U / cos g + k W^2 cos g / U + W tan g),
/// U(h) = rho(h) V_F(h)^2 S / 2, g = atan(v). Fuel burned per metre.
class SpeedRestrictedLagrangian {
 public:
  SpeedRestrictedLagrangian(const AircraftModel& aircraft, SpeedLaw law);

  double u_of(double h) const;  ///< U(h) [N]
  double value(double w, double h, double v) const;
  double d_h(double w, double h, double v) const;
  double d_v(double w, double h, double v) const;
  double d_vv(double w, double h, double v) const;
  double d_vh(double w, double h, double v) const;

  /// v' = (L_u - L_vu v) / L_vv as used for the path (no W-coupling term).
  double slope_rate(double w, double h, double v) const;

  const SpeedLaw& law() const noexcept { return law_; }

 private:
  double a_of(double h) const;
  double a_log_derivative(double h) const;
  double u_derivative(double h) const;

  AircraftModel aircraft_;
  SpeedLaw law_;
};

/// Speed-restricted climb at max continuous thrust: R = U(h)/W and
/// gamma = gamma_fixed_r_thrust(R, T_max/W).
Segment speed_restricted_max_thrust(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law,
                                    const StopConditions& stops, const SolverSettings& settings = {});

/// Euler-Lagrange path of the speed-restricted problem. The start must be
/// below `ceiling`; rising past ceiling + ceiling_margin is an error.
Segment speed_restricted_el(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law,
                            const StopConditions& stops, double ceiling, double ceiling_margin,
                            const SolverSettings& settings = {});

// Flight level change --------------------------------------------------------

enum class LevelChangeMode { Climb, Descent };

/// Instantaneous simultaneous change of path angle and thrust at a level-change end.
struct ThrustJump {
  double x = 0.0;
  double h = 0.0;
  double thrust_before = 0.0;
  double thrust_after = 0.0;
  double gamma_before = 0.0;
  double gamma_after = 0.0;
};

struct LevelChange {
  Segment segment;
  ThrustJump entry;
  ThrustJump exit;
  double entry_gamma = 0.0;      ///< fixed-angle entry solution
  double linear_gamma = 0.0;     ///< (T - T0) / W0
  double terminal_thrust = 0.0;  ///< T1 with T1/W1 = T0/W0
};

/// Constant-R0 level change from start.h to h1 at max (climb) or idle (descent) thrust.
LevelChange level_change(const AircraftModel& aircraft, const FlightState& start, double h1, LevelChangeMode mode,
                         const SolverSettings& settings = {});

}  // namespace maxrange
