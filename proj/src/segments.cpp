#include "maxrange/segments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "maxrange/error.hpp"
#include "segment_builder.hpp"

namespace maxrange {

std::string_view phase_name(Phase phase) {
  switch (phase) {
    case Phase::PlanFollowing: return "PlanFollowing";
    case Phase::MaxThrustClimb: return "MaxThrustClimb";
    case Phase::ELTransition: return "ELTransition";
    case Phase::ContinuousDescent: return "ContinuousDescent";
    case Phase::SpeedRestrictedMaxThrust: return "SpeedRestrictedMaxThrust";
    case Phase::SpeedRestrictedEL: return "SpeedRestrictedEL";
    case Phase::LevelChange: return "LevelChange";
    case Phase::LevelCruise: return "LevelCruise";
    case Phase::AccelerationMarker: return "AccelerationMarker";
  }
  return "Unknown";
}

bool Segment::all_feasible() const {
  return std::all_of(samples.begin(), samples.end(), [](const SegmentSample& s) { return s.feasible; });
}

double select_r(const DragPolar& polar, const RStrategy& strategy, double gamma) {
  if (std::holds_alternative<OptimalRange>(strategy)) return r_gamma(polar, gamma);
  if (std::holds_alternative<MaxLiftDrag>(strategy)) return r_ld(polar, gamma);
  return std::get<FixedR>(strategy).r;
}

FlightPlan FlightPlan::level(double h) {
  return {[h](double) { return h; }, [](double) { return 0.0; }};
}

FlightPlan FlightPlan::constant_angle(double x0, double h0, double gamma) {
  const double slope = std::tan(gamma);
  return {[=](double x) { return h0 + slope * (x - x0); }, [slope](double) { return slope; }};
}

namespace detail {

SegmentSample make_sample_with_speed(const AircraftModel& aircraft, double x, double h, double w, double gamma,
                                     double r, double v, double thrust, double time, double slack) {
  SegmentSample s;
  s.state = {x, h, w, gamma, r};
  s.v = v;
  s.thrust = thrust;
  s.thrust_ratio = thrust / w;
  s.cl = std::cos(gamma) / r;
  s.time = time;
  s.fuel_per_distance = aircraft.sfc(h) * thrust / (v * std::cos(gamma));
  s.feasible = s.thrust_ratio >= aircraft.idle_thrust(h) / w - slack &&
               s.thrust_ratio <= aircraft.max_thrust(h) / w + slack;
  return s;
}

SegmentSample make_sample(const AircraftModel& aircraft, double x, double h, double w, double gamma, double r,
                          double thrust, double time, double slack) {
  return make_sample_with_speed(aircraft, x, h, w, gamma, r, aircraft.speed(r, h, w), thrust, time, slack);
}

namespace {

struct EventPlan {
  std::vector<ode::EventMonitor> monitors;
  std::vector<std::size_t> stop_of_monitor;  // stops.size() + g for guard g
};

EventPlan plan_events(const SegmentModel& model, const StopConditions& stops, double h0) {
  const AircraftModel* ac = model.aircraft;
  EventPlan plan;
  const auto& sample = model.sample;
  for (std::size_t i = 0; i < stops.size(); ++i) {
    const auto& stop = stops[i];
    ode::EventMonitor m;
    if (std::holds_alternative<AtDistance>(stop)) {
      continue;
    } else if (const auto* a = std::get_if<AtAltitude>(&stop)) {
      const double target = a->h;
      m.fn = [sample, target](double x, std::span<const double> y) { return sample(x, y).state.h - target; };
    } else if (std::holds_alternative<AtLevelFlight>(stop)) {
      m.fn = [sample](double x, std::span<const double> y) { return sample(x, y).state.gamma; };
    } else if (std::holds_alternative<AtIdleThrust>(stop)) {
      m.fn = [sample, ac](double x, std::span<const double> y) {
        const SegmentSample s = sample(x, y);
        return s.thrust - ac->idle_thrust(s.state.h);
      };
      m.crossing = ode::Crossing::Falling;
      m.scale = std::max(1.0, ac->idle_thrust(h0));
    } else {
      const auto& mon = std::get<Monitored>(stop);
      auto fn = mon.fn;
      m.fn = [sample, fn](double x, std::span<const double> y) { return fn(sample(x, y)); };
      m.crossing = mon.crossing;
      m.scale = mon.scale;
    }
    plan.monitors.push_back(std::move(m));
    plan.stop_of_monitor.push_back(i);
  }
  for (std::size_t g = 0; g < model.guards.size(); ++g) {
    plan.monitors.push_back(model.guards[g]);
    plan.stop_of_monitor.push_back(stops.size() + g);
  }
  return plan;
}

}  // namespace

BuiltSegment build_segment(const SegmentModel& model, const ode::Vector& initial, double x_begin,
                           const StopConditions& stops, const SolverSettings& settings) {
  const std::string phase{phase_name(model.phase)};
  double x_end = x_begin + settings.max_segment_distance;
  std::optional<std::size_t> distance_stop;
  for (std::size_t i = 0; i < stops.size(); ++i) {
    if (const auto* d = std::get_if<AtDistance>(&stops[i])) {
      if (d->x < x_begin) {
        throw DomainError(fmt::format("{}: stop distance {} m lies before the start {} m", phase, d->x, x_begin));
      }
      if (!distance_stop || d->x < x_end) {
        x_end = d->x;
        distance_stop = i;
      }
    }
  }
  if (!(settings.sample_spacing > 0.0)) throw DomainError("sample spacing must be positive");

  BuiltSegment out;
  out.segment.phase = model.phase;
  const SegmentSample first = model.sample(x_begin, initial);

  if (x_end == x_begin) {
    out.segment.samples.push_back(first);
    out.segment.stop_index = *distance_stop;
    return out;
  }

  const bool needs_aircraft = std::any_of(stops.begin(), stops.end(), [](const StopCondition& s) {
    return std::holds_alternative<AtIdleThrust>(s);
  });
  if (needs_aircraft && model.aircraft == nullptr) {
    throw DomainError(fmt::format("{}: idle-thrust stop needs an aircraft", phase));
  }

  const EventPlan events = plan_events(model, stops, first.state.h);

  ode::OdeProblem problem;
  problem.rhs = model.rhs;
  problem.initial = initial;
  problem.x_begin = x_begin;
  problem.x_end = x_end;
  problem.rtol = settings.rtol;
  problem.atol = settings.atol;
  problem.max_step = settings.max_step;
  problem.events = events.monitors;

  out.path = ode::integrate(problem);
  const auto& path = out.path;

  if (path.termination() == ode::Termination::Event) {
    const std::size_t stop = events.stop_of_monitor[path.terminal_event()->monitor];
    if (stop >= stops.size()) {
      const SegmentSample last = model.sample(path.x_back(), path.final_state());
      model.on_guard(stop - stops.size(), last);
      throw PlanningError(phase, "guard condition reached");
    }
    out.segment.stop_index = stop;
  } else if (distance_stop) {
    out.segment.stop_index = *distance_stop;
  } else {
    throw PlanningError(phase, fmt::format("no stop condition reached within {:.0f} km",
                                           settings.max_segment_distance / 1000.0));
  }

  const double xa = path.x_front();
  const double xb = path.x_back();
  const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((xb - xa) / settings.sample_spacing)));
  auto& samples = out.segment.samples;
  samples.reserve(n + 1);
  samples.push_back(first);
  for (std::size_t i = 1; i < n; ++i) {
    const double x = xa + (xb - xa) * static_cast<double>(i) / static_cast<double>(n);
    samples.push_back(model.sample(x, path.at(x)));
  }
  samples.push_back(model.sample(xb, path.final_state()));
  return out;
}

}  // namespace detail

namespace {

void require_stall_margin(const AircraftModel& aircraft, double r, std::string_view phase, double x) {
  if (!(r >= aircraft.r_stall)) {
    throw PlanningError(std::string(phase),
                        fmt::format("pressure ratio {:.4f} below the stall floor {:.4f} at x = {:.1f} m", r,
                                    aircraft.r_stall, x));
  }
}

constexpr double kMaxPlanAngle = 89.0 * std::numbers::pi / 180.0;

}  // namespace

Segment integrate_plan(const AircraftModel& aircraft, const FlightPlan& plan, double w0, const RStrategy& strategy,
                       double x_begin, double x_end, const SolverSettings& settings, WeightEquation equation) {
  if (!plan.altitude || !plan.slope) throw DomainError("flight plan needs altitude and slope");
  if (!(w0 > 0.0)) throw DomainError(fmt::format("initial weight must be positive, got {}", w0));
  if (x_end < x_begin) throw DomainError(fmt::format("plan span [{}, {}] is reversed", x_begin, x_end));

  const DragPolar& polar = aircraft.polar;
  const double s_area = aircraft.wing_area;
  const bool use_z = equation == WeightEquation::ZSubstitution;

  const auto geometry = [&, strategy](double x) {
    const double gamma = std::atan(plan.slope(x));
    if (!(std::abs(gamma) < kMaxPlanAngle)) {
      throw DomainError(fmt::format("plan path angle {:.3f} deg at x = {:.1f} m exceeds 89 deg",
                                    gamma * 180.0 / std::numbers::pi, x));
    }
    const double r = select_r(polar, strategy, gamma);
    require_stall_margin(aircraft, r, "PlanFollowing", x);
    return std::pair{gamma, r};
  };
  const auto weight_of = [use_z](double y0) { return use_z ? 0.25 * y0 * y0 : y0; };

  detail::SegmentModel model;
  model.phase = Phase::PlanFollowing;
  model.aircraft = &aircraft;
  model.rhs = [&, use_z](double x, std::span<const double> y, std::span<double> dydx) {
    const double h = plan.altitude(x);
    const auto [gamma, r] = geometry(x);
    const double c = std::cos(gamma);
    const double t = thrust_ratio(polar, r, gamma);
    const double rho = aircraft.density(h);
    const double sfc = aircraft.sfc(h);
    const double w = weight_of(y[0]);
    if (use_z) {
      dydx[0] = -(sfc / c) * t * std::sqrt(rho * s_area / (2.0 * r));
    } else {
      dydx[0] = -sfc * t * w / (aircraft.speed(r, h, w) * c);
    }
    dydx[1] = 1.0 / (aircraft.speed(r, h, w) * c);
  };
  model.sample = [&](double x, std::span<const double> y) {
    const double h = plan.altitude(x);
    const auto [gamma, r] = geometry(x);
    const double w = weight_of(y[0]);
    return detail::make_sample(aircraft, x, h, w, gamma, r, thrust_ratio(polar, r, gamma) * w, y[1],
                               settings.feasibility_slack);
  };

  const ode::Vector initial{use_z ? 2.0 * std::sqrt(w0) : w0, 0.0};
  return detail::build_segment(model, initial, x_begin, {AtDistance{x_end}}, settings).segment;
}

Segment climb_prescribed_thrust(const AircraftModel& aircraft, const FlightState& start,
                                const std::function<double(double h)>& thrust_law, const StopConditions& stops,
                                const SolverSettings& settings, Phase phase) {
  if (!thrust_law) throw DomainError("climb needs a thrust law");
  if (!(start.w > 0.0)) throw DomainError(fmt::format("initial weight must be positive, got {}", start.w));
  const DragPolar& polar = aircraft.polar;
  const std::string name{phase_name(phase)};

  const auto geometry = [&](double x, double h, double w) {
    const double thrust = thrust_law(h);
    const double t = thrust / w;
    double gamma = 0.0;
    try {
      gamma = gamma_from_thrust(polar, t);
    } catch (const DomainError& e) {
      throw PlanningError(name, fmt::format("infeasible T/W = {:.6g} at altitude {:.1f} m ({})", t, h, e.what()));
    }
    const double r = r_gamma(polar, gamma);
    require_stall_margin(aircraft, r, name, x);
    return std::tuple{gamma, r, thrust};
  };

  detail::SegmentModel model;
  model.phase = phase;
  model.aircraft = &aircraft;
  model.rhs = [&](double x, std::span<const double> y, std::span<double> dydx) {
    const double h = y[0];
    const double w = y[1];
    const auto [gamma, r, thrust] = geometry(x, h, w);
    const double c = std::cos(gamma);
    const double v = aircraft.speed(r, h, w);
    dydx[0] = std::tan(gamma);
    dydx[1] = -aircraft.sfc(h) * thrust / (v * c);
    dydx[2] = 1.0 / (v * c);
  };
  model.sample = [&](double x, std::span<const double> y) {
    const auto [gamma, r, thrust] = geometry(x, y[0], y[1]);
    return detail::make_sample(aircraft, x, y[0], y[1], gamma, r, thrust, y[2], settings.feasibility_slack);
  };

  return detail::build_segment(model, {start.h, start.w, 0.0}, start.x, stops, settings).segment;
}

Segment continuous_descent(const AircraftModel& aircraft, const FlightState& start, double h_target,
                           const SolverSettings& settings) {
  if (!(h_target < start.h)) {
    throw DomainError(fmt::format("descent target {:.1f} m is not below the start {:.1f} m", h_target, start.h));
  }
  const auto idle = [&aircraft](double h) { return aircraft.idle_thrust(h); };
  return climb_prescribed_thrust(aircraft, start, idle, {AtAltitude{h_target}}, settings, Phase::ContinuousDescent);
}

LevelChange level_change(const AircraftModel& aircraft, const FlightState& start, double h1, LevelChangeMode mode,
                         const SolverSettings& settings) {
  const std::string name{phase_name(Phase::LevelChange)};
  const DragPolar& polar = aircraft.polar;
  const double r0 = r_zero(polar);
  const double tau0 = thrust_ratio(polar, r0, 0.0);
  const bool climb = mode == LevelChangeMode::Climb;
  if (climb && !(h1 > start.h)) throw DomainError("climbing level change needs a higher target level");
  if (!climb && !(h1 < start.h)) throw DomainError("descending level change needs a lower target level");

  const auto thrust_of = [&aircraft, climb](double h) {
    return climb ? aircraft.max_thrust(h) : aircraft.idle_thrust(h);
  };
  const double w0 = start.w;
  const double thrust_start = thrust_of(start.h);
  if (climb && !(thrust_start / w0 > tau0)) {
    throw PlanningError(name, fmt::format("level change impossible: max T/W = {:.5f} at {:.0f} m does not exceed "
                                          "the level-flight requirement {:.5f}",
                                          thrust_start / w0, start.h, tau0));
  }
  if (!climb && !(thrust_start / w0 < tau0)) {
    throw PlanningError(name, "level change impossible: idle thrust does not allow a descent at R0");
  }

  const auto gamma_of = [&](double h, double w) {
    try {
      return gamma_fixed_r_thrust(polar, r0, thrust_of(h) / w);
    } catch (const DomainError& e) {
      throw PlanningError(name, fmt::format("level change impossible at {:.1f} m: {}", h, e.what()));
    }
  };

  detail::SegmentModel model;
  model.phase = Phase::LevelChange;
  model.aircraft = &aircraft;
  model.rhs = [&](double, std::span<const double> y, std::span<double> dydx) {
    const double h = y[0];
    const double w = y[1];
    const double gamma = gamma_of(h, w);
    const double c = std::cos(gamma);
    const double v = aircraft.speed(r0, h, w);
    dydx[0] = std::tan(gamma);
    dydx[1] = -aircraft.sfc(h) * thrust_of(h) / (v * c);
    dydx[2] = 1.0 / (v * c);
  };
  model.sample = [&](double x, std::span<const double> y) {
    return detail::make_sample(aircraft, x, y[0], y[1], gamma_of(y[0], y[1]), r0, thrust_of(y[0]), y[2],
                               settings.feasibility_slack);
  };

  const StopConditions stops{AtAltitude{h1}, AtLevelFlight{}};
  const Segment seg = detail::build_segment(model, {start.h, w0, 0.0}, start.x, stops, settings).segment;
  if (seg.stop_index != 0) {
    throw PlanningError(name, fmt::format("level change impossible: levelled off at {:.1f} m before {:.1f} m",
                                          seg.back().state.h, h1));
  }

  LevelChange out;
  out.segment = seg;
  out.entry_gamma = seg.front().state.gamma;
  out.linear_gamma = (thrust_start - tau0 * w0) / w0;
  out.terminal_thrust = tau0 * seg.back().state.w;
  out.entry = {seg.front().state.x, start.h, tau0 * w0, thrust_start, 0.0, out.entry_gamma};
  out.exit = {seg.back().state.x, seg.back().state.h, seg.back().thrust, out.terminal_thrust,
              seg.back().state.gamma, 0.0};
  return out;
}

}  // namespace maxrange
