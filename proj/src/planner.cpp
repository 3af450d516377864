#include "maxrange/planner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "maxrange/error.hpp"
#include "segment_builder.hpp"

namespace maxrange {
namespace {

constexpr double kRelTol = 1e-9;

bool near(double a, double b, double abs_tol, double rel_tol) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::max(std::abs(a), std::abs(b));
}

std::string name_of(Phase p) { return std::string(phase_name(p)); }

double max_thrust_law_value(const AircraftModel& aircraft, double h) { return aircraft.max_thrust(h); }

}  // namespace

const Segment& Trajectory::segment(Phase phase) const {
  for (const auto& s : segments) {
    if (s.phase == phase) return s;
  }
  throw DomainError(fmt::format("trajectory has no {} segment", phase_name(phase)));
}

bool Trajectory::has_phase(Phase phase) const {
  return std::any_of(segments.begin(), segments.end(), [phase](const Segment& s) { return s.phase == phase; });
}

Trajectory assemble(std::vector<Segment> segments, std::vector<ThrustJump> thrust_jumps) {
  if (segments.empty()) throw DomainError("cannot assemble an empty trajectory");
  Trajectory traj;
  double clock = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    auto& seg = segments[i];
    if (seg.samples.empty()) throw DomainError("cannot assemble an empty segment");
    const double t0 = seg.front().time;
    for (auto& s : seg.samples) s.time = s.time - t0 + clock;
    clock = seg.back().time;

    if (i == 0) continue;
    const Segment& prev = segments[i - 1];
    const SegmentSample& a = prev.back();
    const SegmentSample& b = seg.front();
    JoinRecord j;
    j.left = i - 1;
    j.x = b.state.x;
    j.dh = b.state.h - a.state.h;
    j.dw = b.state.w - a.state.w;
    j.dgamma = b.state.gamma - a.state.gamma;
    j.dv = b.v - a.v;
    j.dthrust = b.thrust - a.thrust;
    const auto involves = [&](Phase p) { return prev.phase == p || seg.phase == p; };
    j.speed_jump_allowed = involves(Phase::AccelerationMarker);
    j.angle_jump_allowed = j.speed_jump_allowed || involves(Phase::LevelChange);
    traj.joins.push_back(j);

    const std::string where = fmt::format("join {} -> {} at x = {:.1f} m", phase_name(prev.phase),
                                          phase_name(seg.phase), b.state.x);
    if (!near(a.state.x, b.state.x, 1e-6, kRelTol)) throw PlanningError("assembly", where + ": distance gap");
    if (!near(a.state.h, b.state.h, 1e-6, kRelTol)) throw PlanningError("assembly", where + ": altitude jump");
    if (!near(a.state.w, b.state.w, 0.0, kRelTol)) throw PlanningError("assembly", where + ": weight jump");
    if (!j.angle_jump_allowed) {
      if (!near(a.state.gamma, b.state.gamma, 1e-9, 0.0)) throw PlanningError("assembly", where + ": path angle jump");
      if (!near(a.thrust, b.thrust, 1e-6, 1e-6)) throw PlanningError("assembly", where + ": thrust jump");
    }
    if (!j.speed_jump_allowed && !near(a.v, b.v, 0.0, 1e-8)) {
      throw PlanningError("assembly", where + ": speed jump");
    }
  }
  traj.fuel = segments.front().front().state.w - segments.back().back().state.w;
  traj.distance = segments.back().back().state.x - segments.front().front().state.x;
  traj.time = segments.back().back().time - segments.front().front().time;
  traj.segments = std::move(segments);
  traj.thrust_jumps = std::move(thrust_jumps);
  return traj;
}

// Three-piece ----------------------------------------------------------------

Trajectory three_piece_candidate(const AircraftModel& aircraft, const FlightState& start, double x_s,
                                 double destination_altitude, const SolverSettings& settings) {
  if (!(x_s >= 0.0)) throw DomainError(fmt::format("transition start {} m must be non-negative", x_s));
  const ELContext context(aircraft);
  const auto max_thrust = [&aircraft](double h) { return max_thrust_law_value(aircraft, h); };

  Segment climb = climb_prescribed_thrust(aircraft, start, max_thrust, {AtDistance{start.x + x_s}}, settings);
  const FlightState top = climb.back().state;
  Segment transition = el_transition(context, top, {AtIdleThrust{}}, settings);
  const FlightState idle = transition.back().state;
  if (!(idle.h > destination_altitude)) {
    throw PlanningError(name_of(Phase::ELTransition),
                        fmt::format("idle thrust reached at {:.1f} m, not above the destination altitude", idle.h));
  }
  Segment descent = continuous_descent(aircraft, idle, destination_altitude, settings);
  Trajectory traj = assemble({std::move(climb), std::move(transition), std::move(descent)});
  traj.shooting_parameter = x_s;
  return traj;
}

Trajectory three_piece(const AircraftModel& aircraft, const FlightState& start, const Destination& destination,
                       const SolverSettings& settings, const ShootingSettings& shooting) {
  if (!(destination.distance > start.x)) throw DomainError("destination must lie beyond the start");
  const auto residual = [&](double x_s) {
    return three_piece_candidate(aircraft, start, x_s, destination.altitude, settings).segments.back().back().state.x -
           destination.distance;
  };

  const double r0 = residual(0.0);
  if (r0 > shooting.distance_tolerance) {
    throw PlanningError("shooting", fmt::format("destination at {:.1f} nm is closer than the shortest three-piece "
                                                "range {:.1f} nm (immediate transition)",
                                                units::m_to_nm(destination.distance - start.x),
                                                units::m_to_nm(r0 + destination.distance - start.x)));
  }
  if (r0 >= -shooting.distance_tolerance) return three_piece_candidate(aircraft, start, 0.0, destination.altitude, settings);

  double lo = 0.0;
  double r_lo = r0;
  double hi = std::max(shooting.bracket_step, -r0);
  double r_hi = 0.0;
  for (;;) {
    if (hi > shooting.max_parameter) {
      throw PlanningError("shooting", fmt::format("destination beyond reach: achievable range {:.1f} to {:.1f} nm",
                                                  units::m_to_nm(r0 + destination.distance - start.x),
                                                  units::m_to_nm(r_lo + destination.distance - start.x)));
    }
    r_hi = residual(hi);
    if (r_hi >= 0.0) break;
    lo = hi;
    r_lo = r_hi;
    hi = lo + std::max(shooting.bracket_step, -r_hi);
  }
  const auto root = ode::root_find(residual, lo, hi, {.x_tol = 1e-6, .f_tol = shooting.distance_tolerance});
  return three_piece_candidate(aircraft, start, root.x, destination.altitude, settings);
}

// Two-piece ------------------------------------------------------------------

namespace {

struct TwoPiece {
  Segment climb;
  Segment level_off;
  bool overshoot = false;
};

TwoPiece two_piece_pieces(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law, double x_c,
                          double ceiling, double ceiling_margin, const SolverSettings& settings) {
  if (!(x_c >= 0.0)) throw DomainError(fmt::format("switch distance {} m must be non-negative", x_c));
  TwoPiece out;
  out.climb = speed_restricted_max_thrust(aircraft, start, law, {AtDistance{start.x + x_c}, AtAltitude{ceiling}},
                                          settings);
  if (out.climb.stop_index == 1) {
    out.overshoot = true;
    return out;
  }
  try {
    out.level_off = speed_restricted_el(aircraft, out.climb.back().state, law, {AtLevelFlight{}}, ceiling,
                                        ceiling_margin, settings);
  } catch (const PlanningError& e) {
    if (e.phase() != name_of(Phase::SpeedRestrictedEL) ||
        std::string_view(e.what()).find("ceiling exceeded") == std::string_view::npos) {
      throw;
    }
    out.overshoot = true;
  }
  return out;
}

}  // namespace

Trajectory two_piece_candidate(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law,
                               double x_c, double ceiling, double ceiling_margin, const SolverSettings& settings) {
  TwoPiece pieces = two_piece_pieces(aircraft, start, law, x_c, ceiling, ceiling_margin, settings);
  if (pieces.overshoot) {
    throw PlanningError(name_of(Phase::SpeedRestrictedEL),
                        fmt::format("ceiling exceeded for switch distance {:.3f} nm", units::m_to_nm(x_c)));
  }
  Trajectory traj = assemble({std::move(pieces.climb), std::move(pieces.level_off)});
  traj.shooting_parameter = x_c;
  return traj;
}

double two_piece_level_off(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law, double x_c,
                           double ceiling, double ceiling_margin, const SolverSettings& settings) {
  const TwoPiece pieces = two_piece_pieces(aircraft, start, law, x_c, ceiling, ceiling_margin, settings);
  if (pieces.overshoot) return ceiling + ceiling_margin;
  return pieces.level_off.back().state.h;
}

Trajectory two_piece_low_climb(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law,
                               double ceiling, const SolverSettings& settings, const ShootingSettings& shooting) {
  if (!(start.h < ceiling)) throw DomainError("two-piece climb must start below the ceiling");
  const double margin = shooting.ceiling_margin;
  const auto residual = [&](double x_c) {
    return two_piece_level_off(aircraft, start, law, x_c, ceiling, margin, settings) - ceiling;
  };

  double lo = 0.0;
  double r_lo = residual(lo);
  if (r_lo > shooting.altitude_tolerance) {
    throw PlanningError("shooting", fmt::format("level-off with no max-thrust piece is already {:.0f} ft above the "
                                                "ceiling", units::m_to_ft(r_lo)));
  }
  double hi = lo;
  double r_hi = r_lo;
  while (r_hi < 0.0) {
    lo = hi;
    r_lo = r_hi;
    hi = lo + shooting.bracket_step;
    if (hi > shooting.max_parameter) {
      throw PlanningError("shooting", fmt::format("no switch distance reaches the ceiling: achievable level-off "
                                                  "{:.0f} to {:.0f} ft",
                                                  units::m_to_ft(residual(0.0) + ceiling),
                                                  units::m_to_ft(r_lo + ceiling)));
    }
    r_hi = residual(hi);
  }
  const auto root = ode::root_find(residual, lo, hi, {.x_tol = 1e-6, .f_tol = shooting.altitude_tolerance});
  Trajectory traj = two_piece_candidate(aircraft, start, law, root.x, ceiling, margin, settings);
  const Segment& second = traj.segments.back();
  if (!second.all_feasible()) {
    throw PlanningError(name_of(Phase::SpeedRestrictedEL), "thrust outside [idle, max] along the level-off piece");
  }
  return traj;
}

// Full flight ----------------------------------------------------------------

void MissionSpec::validate() const {
  if (!(start_weight > 0.0)) throw ConfigError("mission: start weight must be positive");
  if (!(destination_distance > 0.0)) throw ConfigError("mission: destination distance must be positive");
  if (!(speed_restriction > 0.0)) throw ConfigError("mission: speed restriction must be positive");
  if (!(acceleration_altitude >= Atmosphere::kMinAltitude)) throw ConfigError("mission: acceleration altitude below the model floor");
  if (!(acceleration_altitude < restriction_ceiling)) {
    throw ConfigError("mission: acceleration altitude must be below the restriction ceiling");
  }
  if (!(destination_altitude >= Atmosphere::kMinAltitude && destination_altitude < restriction_ceiling)) {
    throw ConfigError("mission: final approach fix must lie between the model floor and the restriction ceiling");
  }
  if (!(first_marker_distance >= 0.0 && second_marker_distance >= 0.0)) {
    throw ConfigError("mission: acceleration distances must be non-negative");
  }
  if (!(marker_entry_stall_factor > 0.0)) throw ConfigError("mission: stall factor must be positive");
  if (marker_fuel && !(*marker_fuel > 0.0)) throw ConfigError("mission: marker fuel must be positive");
}

Segment acceleration_marker(const AircraftModel& aircraft, const FlightState& entry, double v_in, double v_out,
                            double distance, std::optional<double> fuel) {
  if (!(v_in > 0.0 && v_out > 0.0)) throw DomainError("acceleration marker speeds must be positive");
  if (!(distance > 0.0)) throw DomainError("acceleration marker distance must be positive");
  const double h = entry.h;
  const double thrust = aircraft.max_thrust(h);
  const double v_mean = 0.5 * (v_in + v_out);
  const double burned = fuel.value_or(aircraft.sfc(h) * thrust * distance / v_mean);
  const double w1 = entry.w - burned;
  if (!(w1 > 0.0)) throw PlanningError(name_of(Phase::AccelerationMarker), "fuel exceeds weight");

  Segment seg;
  seg.phase = Phase::AccelerationMarker;
  seg.samples.push_back(detail::make_sample_with_speed(aircraft, entry.x, h, entry.w, 0.0,
                                                       aircraft.pressure_ratio(v_in, h, entry.w), v_in, thrust, 0.0,
                                                       0.0));
  seg.samples.push_back(detail::make_sample_with_speed(aircraft, entry.x + distance, h, w1, 0.0,
                                                       aircraft.pressure_ratio(v_out, h, w1), v_out, thrust,
                                                       distance / v_mean, 0.0));
  for (auto& s : seg.samples) s.feasible = true;
  return seg;
}

Trajectory full_flight(const AircraftModel& aircraft, const MissionSpec& mission, const SolverSettings& settings,
                       const ShootingSettings& shooting) {
  aircraft.validate();
  mission.validate();
  const SpeedLaw law = SpeedLaw::constant_ias(aircraft.atmosphere, mission.speed_restriction);
  const double ceiling = mission.restriction_ceiling;

  std::vector<Segment> segments;
  const FlightState origin{0.0, mission.acceleration_altitude, mission.start_weight, 0.0, 0.0};
  const double v_rotate = mission.marker_entry_stall_factor * aircraft.stall_speed(origin.w, origin.h);
  segments.push_back(acceleration_marker(aircraft, origin, v_rotate, law.tas(origin.h), mission.first_marker_distance,
                                         mission.marker_fuel));

  Trajectory low = two_piece_low_climb(aircraft, segments.back().back().state, law, ceiling, settings, shooting);
  for (auto& s : low.segments) segments.push_back(std::move(s));

  const SegmentSample& level = segments.back().back();
  FlightState entry = level.state;
  entry.gamma = 0.0;
  const auto climb_speed = [&](double w) {
    const double gamma = gamma_from_thrust(aircraft.polar, aircraft.max_thrust(entry.h) / w);
    return aircraft.speed(r_gamma(aircraft.polar, gamma), entry.h, w);
  };
  double v_out = climb_speed(entry.w);
  for (int it = 0; it < 4; ++it) {
    const Segment trial = acceleration_marker(aircraft, entry, level.v, v_out, mission.second_marker_distance,
                                              mission.marker_fuel);
    v_out = climb_speed(trial.back().state.w);
  }
  segments.push_back(
      acceleration_marker(aircraft, entry, level.v, v_out, mission.second_marker_distance, mission.marker_fuel));

  FlightState climb_start = segments.back().back().state;
  const Trajectory high = three_piece(aircraft, climb_start,
                                      {mission.destination_distance, mission.destination_altitude}, settings, shooting);
  for (const auto& s : high.segments) segments.push_back(s);

  Trajectory traj = assemble(std::move(segments));
  traj.shooting_parameter = high.shooting_parameter;

  const Segment& descent = traj.segment(Phase::ContinuousDescent);
  for (std::size_t i = 1; i < descent.samples.size(); ++i) {
    const auto& a = descent.samples[i - 1];
    const auto& b = descent.samples[i];
    if (a.state.h >= ceiling && b.state.h <= ceiling) {
      const double f = a.state.h == b.state.h ? 0.0 : (a.state.h - ceiling) / (a.state.h - b.state.h);
      const double v = a.v + f * (b.v - a.v);
      traj.descent_ias_at_ceiling = aircraft.atmosphere.tas_to_kias(v, ceiling);
      traj.deceleration_needed = *traj.descent_ias_at_ceiling > mission.speed_restriction;
      break;
    }
  }
  return traj;
}

// ATC cruise -----------------------------------------------------------------

Trajectory atc_cruise(const AircraftModel& aircraft, double start_weight, const std::vector<CruiseLevel>& levels,
                      const SolverSettings& settings) {
  if (levels.empty()) throw DomainError("cruise needs at least one level");
  const double r0 = r_zero(aircraft.polar);
  const double tau0 = thrust_ratio(aircraft.polar, r0, 0.0);

  std::vector<Segment> segments;
  std::vector<ThrustJump> jumps;
  std::vector<LevelChangeFuel> fuel;
  FlightState state{0.0, levels.front().altitude, start_weight, 0.0, r0};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (!(levels[i].distance >= 0.0)) throw DomainError("cruise level distance must be non-negative");
    Segment cruise = integrate_plan(aircraft, FlightPlan::level(levels[i].altitude), state.w, FixedR{r0}, state.x,
                                    state.x + levels[i].distance, settings);
    cruise.phase = Phase::LevelCruise;
    state = cruise.back().state;
    segments.push_back(std::move(cruise));
    if (i + 1 == levels.size()) break;

    const double h1 = levels[i + 1].altitude;
    if (h1 == state.h) continue;
    const auto mode = h1 > state.h ? LevelChangeMode::Climb : LevelChangeMode::Descent;
    LevelChange lc;
    try {
      lc = level_change(aircraft, state, h1, mode, settings);
    } catch (const PlanningError& e) {
      throw PlanningError(name_of(Phase::LevelChange),
                          fmt::format("between {:.0f} ft and {:.0f} ft: {}", units::m_to_ft(state.h),
                                      units::m_to_ft(h1), e.what()));
    }
    const auto& mid = lc.segment.samples[lc.segment.samples.size() / 2];
    const double c_over_v = aircraft.sfc(mid.state.h) / mid.v;
    const double w0 = state.w;
    fuel.push_back({state.h, h1, lc.segment.fuel_burned(),
                    c_over_v * (w0 * (h1 - state.h) + tau0 * w0 * lc.segment.distance())});
    jumps.push_back(lc.entry);
    jumps.push_back(lc.exit);
    state = lc.segment.back().state;
    state.gamma = 0.0;
    segments.push_back(std::move(lc.segment));
  }
  Trajectory traj = assemble(std::move(segments), std::move(jumps));
  traj.level_change_fuel = std::move(fuel);
  return traj;
}

// Diagnostics ----------------------------------------------------------------

TopOfDescent top_of_descent(const Trajectory& trajectory) {
  struct Point {
    double x, h;
    std::size_t seg;
  };
  std::vector<Point> pts;
  for (std::size_t i = 0; i < trajectory.segments.size(); ++i) {
    for (const auto& s : trajectory.segments[i].samples) {
      if (!pts.empty() && pts.back().x == s.state.x) continue;
      pts.push_back({s.state.x, s.state.h, i});
    }
  }
  if (pts.size() < 3) throw PlanningError("top of descent", "trajectory too short");
  const auto it = std::max_element(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.h < b.h; });
  const auto k = static_cast<std::size_t>(it - pts.begin());
  if (k == 0 || k + 1 == pts.size()) {
    throw PlanningError("top of descent", "trajectory is monotone in altitude; no interior maximum");
  }
  const Point& a = pts[k - 1];
  const Point& b = pts[k];
  const Point& c = pts[k + 1];
  TopOfDescent tod{b.x, b.h, b.seg};
  // Parabola through the three points, in coordinates centred on b.
  const double u1 = a.x - b.x;
  const double u3 = c.x - b.x;
  const double d1 = (a.h - b.h) / u1;
  const double d3 = (c.h - b.h) / u3;
  const double curv = (d3 - d1) / (u3 - u1);
  if (curv < 0.0) {
    const double lin = d1 - curv * u1;
    const double uv = -lin / (2.0 * curv);
    if (uv > u1 && uv < u3) {
      tod.x = b.x + uv;
      tod.h = b.h + lin * uv + curv * uv * uv;
      if (uv < 0.0) tod.segment = a.seg;
    }
  }
  return tod;
}

double stationary_climb_angle(const AircraftModel& aircraft, double h) {
  const double d = design_parameter(aircraft.propulsion, aircraft.atmosphere, h);
  const double root_s = std::sqrt(0.5 * aircraft.wing_area);
  const auto f = [&](double gamma) {
    const double t = tau(aircraft.polar, gamma);
    return d - t * std::sqrt(t) / (std::sin(gamma) * std::sqrt(r_gamma(aircraft.polar, gamma))) * root_s;
  };
  try {
    return ode::root_find(f, units::deg_to_rad(0.01), units::deg_to_rad(20.0), {.x_tol = 1e-15}).x;
  } catch (const DomainError&) {
    throw PlanningError("stationary climb", "no stationary climb angle between 0.01 and 20 deg");
  }
}

}  // namespace maxrange
