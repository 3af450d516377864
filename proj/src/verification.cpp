#include "maxrange/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include <fmt/format.h>

#include "maxrange/error.hpp"
#include "maxrange/oracle.hpp"
#include "maxrange/planner.hpp"
#include "maxrange/units.hpp"

namespace maxrange {
namespace {

using units::deg_to_rad;
using units::ft_to_m;
using units::kNauticalMile;
using units::rad_to_deg;

struct Outcome {
  bool passed;
  std::string detail;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

Outcome reference_constants(const VerificationOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const DragPolar& p = o.aircraft.polar;
  const double rld = r_ld(p, 0.0);
  const double r0 = r_zero(p);
  const double t_level = thrust_ratio(p, r0, 0.0);
  const double glide = rad_to_deg(gamma_from_thrust(p, 0.0));
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = std::abs(rld - 1.744) <= 0.005 && std::abs(r0 - 3.021) <= 0.005 &&
                  std::abs(t_level - 0.0967) <= 0.0005 && std::abs(glide + 4.78) <= 0.01 && ms < 1.0;
  return {ok, fmt::format("R_L/D = {:.4f}, R0 = {:.4f}, T/W(R0, 0) = {:.5f}, glide = {:.4f} deg, {:.3f} ms", rld, r0,
                          t_level, glide, ms)};
}

Outcome closed_form_vs_oracle(const VerificationOptions& o) {
  double worst = 0.0;
  double worst_gamma = 0.0;
  for (double g : linspace(-10.0, 15.0, 61)) {
    const double d = rel(r_gamma(o.aircraft.polar, deg_to_rad(g)), oracle::brute_min_r(o.aircraft.polar, deg_to_rad(g)));
    if (d > worst) {
      worst = d;
      worst_gamma = g;
    }
  }
  return {worst < 1e-6, fmt::format("max relative deviation {:.3g} at {:.2f} deg over 61 angles", worst, worst_gamma)};
}

Outcome round_trips(const VerificationOptions& o) {
  const DragPolar& p = o.aircraft.polar;
  double e1 = 0.0, e2 = 0.0, e3 = 0.0;
  for (double t : linspace(0.0, 0.5, 100)) e1 = std::max(e1, std::abs(tau(p, gamma_from_thrust(p, t)) - t));
  for (double r : linspace(1.8, 12.0, 100)) e2 = std::max(e2, std::abs(r_gamma(p, gamma_from_r(p, r)) - r));
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> r_dist(1.0, 12.0);
  std::uniform_real_distribution<double> g_dist(deg_to_rad(-30.0), deg_to_rad(30.0));
  for (int i = 0; i < 100; ++i) {
    const double r = r_dist(rng);
    const double t = thrust_ratio(p, r, g_dist(rng));
    e3 = std::max(e3, std::abs(thrust_ratio(p, r, gamma_fixed_r_thrust(p, r, t)) - t));
  }
  return {e1 < 1e-10 && e2 < 1e-10 && e3 < 1e-10,
          fmt::format("max errors: thrust {:.2g}, pressure ratio {:.2g}, fixed-R {:.2g}", e1, e2, e3)};
}

Outcome z_substitution(const VerificationOptions& o) {
  const double span = 100e3;
  struct Case {
    const char* name;
    FlightPlan plan;
  };
  const Case cases[] = {{"level", FlightPlan::level(9000.0)},
                        {"climb 3 deg", FlightPlan::constant_angle(0.0, 2000.0, deg_to_rad(3.0))},
                        {"descent -3 deg", FlightPlan::constant_angle(0.0, 8000.0, deg_to_rad(-3.0))}};
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const auto z = integrate_plan(o.aircraft, c.plan, o.weight, OptimalRange{}, 0.0, span, o.settings,
                                  WeightEquation::ZSubstitution);
    const auto d = integrate_plan(o.aircraft, c.plan, o.weight, OptimalRange{}, 0.0, span, o.settings,
                                  WeightEquation::Direct);
    const double dev = rel(z.back().state.w, d.back().state.w);
    worst = std::max(worst, dev);
    detail += fmt::format("{}: {:.2g}; ", c.name, dev);
  }
  return {worst < 1e-8, detail + "relative final-weight deviation"};
}

Outcome level_closed_form(const VerificationOptions& o) {
  AircraftModel ac = o.aircraft;
  ac.propulsion.c_sl = 2e-4;
  ac.propulsion.sfc_exponent = 0.0;
  const double h = 9042.0;
  const double w0 = 60000.0;
  const double r0 = r_zero(ac.polar);
  const double rho = ac.density(h);
  const double beta = 0.5 * ac.sfc(h) * std::sqrt(rho * ac.wing_area / (2.0 * r0)) *
                      (ac.polar.cd0 * r0 + ac.polar.k / r0);
  double worst = 0.0;
  double w_end = 0.0;
  for (int i = 1; i <= 10; ++i) {
    const double x = 10e3 * i;
    const Segment seg = integrate_plan(ac, FlightPlan::level(h), w0, FixedR{r0}, 0.0, x, o.settings);
    const double exact = std::pow(std::sqrt(w0) - beta * x, 2.0);
    worst = std::max(worst, rel(seg.back().state.w, exact));
    w_end = seg.back().state.w;
  }
  return {worst < 1e-6, fmt::format("max relative deviation {:.3g} over 10 checkpoints; W(100 km) = {:.1f} N", worst,
                                    w_end)};
}

// Independent Euler-Lagrange right-hand side: finite differences of G only.
double el_rhs_by_differences(const ELContext& ctx, double slope) {
  const auto g = [&ctx](double p) { return ctx.g(p); };
  const double step = 1e-3;
  const double g1 = oracle::richardson_derivative(g, slope, step);
  const double g2 = oracle::richardson_second_derivative(g, slope, step);
  return ctx.f_log_derivative() * (ctx.g(slope) - g1 * slope) / g2;
}

Outcome el_structure(const VerificationOptions& o) {
  const ELContext ctx(o.aircraft);
  const double h0 = ft_to_m(o.restriction_ceiling_ft);
  const double floor = ft_to_m(o.final_approach_fix_ft);
  const double span = 25e3;
  SolverSettings s = o.settings;
  s.sample_spacing = 100.0;

  std::size_t samples = 0, convex = 0, speed_up = 0;
  double worst_residual = 0.0, worst_shift = 0.0, max_curv = -1e300;
  for (int g = 1; g <= 5; ++g) {
    const FlightState start{0.0, h0, o.weight, deg_to_rad(g), 0.0};
    const StopConditions stops{AtIdleThrust{}, AtAltitude{floor}, AtDistance{span}};
    const ELPath el = el_transition_path(ctx, start, stops, s);
    const auto& seg = el.segment.samples;
    for (std::size_t i = 0; i < seg.size(); ++i) {
      const double curv = ctx.curvature(std::tan(seg[i].state.gamma));
      ++samples;
      max_curv = std::max(max_curv, curv);
      if (!(curv < 0.0)) ++convex;
      if (i > 0 && !(seg[i].v < seg[i - 1].v)) ++speed_up;
    }
    for (std::size_t i = 0; i < el.path.size(); ++i) {
      const double p = el.path.state(i)[1];
      const double hpp = el.path.derivative(i)[1];
      const double ref = el_rhs_by_differences(ctx, p);
      worst_residual = std::max(worst_residual, std::abs(hpp - ref) / std::abs(ref));
    }
    const double dx = 10e3, dh = -500.0;
    const FlightState shifted{dx, h0 + dh, o.weight, deg_to_rad(g), 0.0};
    const StopConditions shifted_stops{AtDistance{dx + el.segment.back().state.x}};
    const ELPath moved = el_transition_path(ctx, shifted, shifted_stops, s);
    for (const auto& smp : seg) {
      const double h_moved = moved.path.at(smp.state.x + dx)[0] - dh;
      worst_shift = std::max(worst_shift, std::abs(h_moved - smp.state.h) / smp.state.h);
    }
  }
  const bool ok = convex == 0 && speed_up == 0 && worst_residual < 1e-6 && worst_shift < 1e-6;
  return {ok, fmt::format("{} samples over 5 paths: h'' >= 0 at {}, V not decreasing at {} (max h'' = {:.3g} 1/m); "
                          "residual {:.2g}; shift {:.2g}",
                          samples, convex, speed_up, max_curv, worst_residual, worst_shift)};
}

Outcome el_optimality(const VerificationOptions& o) {
  const ELContext ctx(o.aircraft);
  SolverSettings s = o.settings;
  s.sample_spacing = 10.0;
  const FlightState start{0.0, ft_to_m(o.restriction_ceiling_ft), o.weight, deg_to_rad(3.0), 0.0};
  const Segment seg = el_transition(ctx, start, {AtDistance{20e3}}, s);
  std::vector<double> xs, hs;
  for (const auto& smp : seg.samples) {
    xs.push_back(smp.state.x);
    hs.push_back(smp.state.h);
  }
  const auto r_of_gamma = [&](double g) { return r_gamma(o.aircraft.polar, g); };
  const double base = oracle::brute_fuel(o.aircraft, xs, hs, o.weight, r_of_gamma);
  const double slack = 10.0 * o.settings.rtol * o.weight;

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> amp(-50.0, 50.0);
  std::uniform_int_distribution<int> mode(1, 4);
  const double xa = xs.front(), len = xs.back() - xs.front();
  int violations = 0;
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double a = amp(rng);
    const int m = mode(rng);
    std::vector<double> hp(hs);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double sn = std::sin(std::numbers::pi * m * (xs[i] - xa) / len);
      hp[i] += a * sn * sn;
    }
    const double fuel = oracle::brute_fuel(o.aircraft, xs, hp, o.weight, r_of_gamma);
    if (!(base <= fuel + slack)) ++violations;
    worst = std::min(worst, fuel - base);
  }
  return {violations == 0, fmt::format("{} of 20 perturbations burn less than the extremal (fuel {:.4f} N, "
                                       "largest saving {:.4g} N, slack {:.2g} N)",
                                       violations, base, -worst, slack)};
}

Outcome three_piece_shooting(const VerificationOptions& o) {
  const FlightState start{0.0, ft_to_m(o.restriction_ceiling_ft), o.weight, 0.0, 0.0};
  const Destination dest{500.0 * kNauticalMile, ft_to_m(o.final_approach_fix_ft)};
  try {
    const Trajectory t = three_piece(o.aircraft, start, dest, o.settings);
    const auto& end = t.segments.back().back().state;
    const Segment& tr = t.segment(Phase::ELTransition);
    bool monotone = true;
    for (std::size_t i = 1; i < tr.samples.size(); ++i) monotone = monotone && tr.samples[i].thrust < tr.samples[i - 1].thrust;
    const double length_nm = units::m_to_nm(tr.distance());
    const double dx_nm = units::m_to_nm(std::abs(end.x - dest.distance));
    const double dh = std::abs(end.h - dest.altitude);
    const bool ok = dx_nm < 0.1 && dh < 1e-6 && monotone && std::abs(length_nm - 15.0) <= 10.0;
    return {ok, fmt::format("distance error {:.3g} nm, altitude error {:.2g} m, thrust monotone: {}, transition "
                            "{:.2f} nm",
                            dx_nm, dh, monotone, length_nm)};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

Outcome stationary_angle(const VerificationOptions& o) {
  const double gs = stationary_climb_angle(o.aircraft);
  const FlightState start{0.0, ft_to_m(o.restriction_ceiling_ft), o.weight, 0.0, 0.0};
  const auto thrust = [&](double h) { return o.aircraft.max_thrust(h); };
  const Segment climb = climb_prescribed_thrust(o.aircraft, start, thrust, {AtDistance{4000e3}}, o.settings);
  const double final_gamma = climb.back().state.gamma;
  const bool ok = gs > 0.0 && std::abs(final_gamma - gs) < deg_to_rad(0.05);
  return {ok, fmt::format("gamma* = {:.5f} deg, climb final gamma = {:.5f} deg after 4000 km at {:.0f} m",
                          rad_to_deg(gs), rad_to_deg(final_gamma), climb.back().state.h)};
}

Outcome two_piece(const VerificationOptions& o) {
  const SpeedLaw law = SpeedLaw::constant_ias(o.aircraft.atmosphere, units::kt_to_mps(o.speed_restriction_kias));
  const double ceiling = ft_to_m(o.restriction_ceiling_ft);
  const FlightState start{0.0, ft_to_m(o.acceleration_altitude_ft), o.weight, 0.0, 0.0};
  const Trajectory t = two_piece_low_climb(o.aircraft, start, law, ceiling, o.settings);
  const double level = t.segments.back().back().state.h;
  const double miss_ft = units::m_to_ft(std::abs(level - ceiling));

  std::vector<double> family;
  for (double nm = 1.0; nm <= 4.0 + 1e-9; nm += 0.5) {
    family.push_back(two_piece_level_off(o.aircraft, start, law, nm * kNauticalMile, ceiling, 1e6, o.settings));
  }
  const bool monotone = std::adjacent_find(family.begin(), family.end(), std::greater_equal<>()) == family.end();
  return {miss_ft < 50.0 && monotone,
          fmt::format("x_c = {:.3f} nm, level-off miss {:.3g} ft; sweep 1-4 nm level-offs {:.0f} to {:.0f} ft, "
                      "monotone: {}",
                      units::m_to_nm(*t.shooting_parameter), miss_ft, units::m_to_ft(family.front()),
                      units::m_to_ft(family.back()), monotone)};
}

Outcome level_change_check(const VerificationOptions& o) {
  const DragPolar& p = o.aircraft.polar;
  const double r0 = r_zero(p);
  const double tau0 = thrust_ratio(p, r0, 0.0);
  const double lo = ft_to_m(12000.0), hi = ft_to_m(14000.0);
  struct Case {
    double h0, h1;
    LevelChangeMode mode;
  };
  double r_err = 0.0, t_err = 0.0, lin_err = 0.0;
  for (const Case& c : {Case{lo, hi, LevelChangeMode::Climb}, Case{hi, lo, LevelChangeMode::Descent}}) {
    const FlightState start{0.0, c.h0, o.weight, 0.0, r0};
    const LevelChange lc = level_change(o.aircraft, start, c.h1, c.mode, o.settings);
    for (const auto& s : lc.segment.samples) {
      r_err = std::max(r_err, std::abs(o.aircraft.pressure_ratio(s.v, s.state.h, s.state.w) - r0));
    }
    const double w1 = lc.segment.back().state.w;
    t_err = std::max(t_err, std::abs(lc.terminal_thrust / w1 - tau0));
    const double slope = (c.h1 - c.h0) / lc.segment.distance();
    lin_err = std::max({lin_err, rel(slope, lc.entry_gamma), rel(lc.linear_gamma, lc.entry_gamma)});
  }
  return {r_err < 1e-9 && t_err < 1e-10 && lin_err < 0.1,
          fmt::format("max |R - R0| = {:.2g}, max |T1/W1 - T0/W0| = {:.2g}, worst linearization error {:.1f}%", r_err,
                      t_err, 100.0 * lin_err)};
}

Outcome design_parameter_spread(const VerificationOptions& o) {
  struct Exponents {
    double x_t, x_c;
  };
  double worst = 0.0;
  for (const Exponents& e : {Exponents{1.0, 0.0}, Exponents{2.0, 0.5}, Exponents{1.5, 0.25}}) {
    PropulsionModel prop = o.aircraft.propulsion;
    prop.thrust_exponent = e.x_t;
    prop.sfc_exponent = e.x_c;
    double lo = 1e300, hi = -1e300;
    for (double h : linspace(0.0, 14000.0, 141)) {
      const double d = design_parameter(prop, o.aircraft.atmosphere, h);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    worst = std::max(worst, (hi - lo) / std::abs(0.5 * (hi + lo)));
  }
  return {worst < 1e-9, fmt::format("max relative spread {:.2g} over three power-law configurations", worst)};
}

struct Entry {
  const char* title;
  Outcome (*fn)(const VerificationOptions&);
  double max_seconds = 0.0;  ///< 0: unbounded
};

constexpr Entry kEntries[kCriterionCount] = {
    {"reference constants", reference_constants},
    {"closed form vs brute-force minimizer", closed_form_vs_oracle, 5.0},
    {"inversion round trips", round_trips},
    {"Z-substitution equivalence", z_substitution},
    {"level-flight closed form", level_closed_form},
    {"Euler-Lagrange structure", el_structure},
    {"Euler-Lagrange local optimality", el_optimality, 30.0},
    {"three-piece shooting", three_piece_shooting},
    {"stationary climb angle", stationary_angle},
    {"two-piece 250 KIAS climb", two_piece},
    {"flight level change", level_change_check},
    {"design parameter altitude independence", design_parameter_spread},
};

}  // namespace

CriterionResult run_criterion(int id, const VerificationOptions& options) {
  CriterionResult r;
  r.id = id;
  if (id < 1 || id > kCriterionCount) {
    r.detail = fmt::format("no criterion {}", id);
    return r;
  }
  const Entry& e = kEntries[id - 1];
  r.title = e.title;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Outcome out = e.fn(options);
    r.passed = out.passed;
    r.detail = out.detail;
  } catch (const std::exception& ex) {
    r.passed = false;
    r.detail = fmt::format("error: {}", ex.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (e.max_seconds > 0.0 && r.seconds > e.max_seconds) {
    r.passed = false;
    r.detail += fmt::format("; exceeded the {:.0f} s budget", e.max_seconds);
  }
  return r;
}

std::vector<CriterionResult> run_all_criteria(const VerificationOptions& options) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= kCriterionCount; ++i) out.push_back(run_criterion(i, options));
  return out;
}

std::string format_result(const CriterionResult& r) {
  return fmt::format("[{}] {:2d} {} ({:.3f} s): {}", r.passed ? "PASS" : "FAIL", r.id, r.title, r.seconds, r.detail);
}

}  // namespace maxrange
