#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "maxrange/config.hpp"
#include "maxrange/error.hpp"
#include "maxrange/output.hpp"
#include "maxrange/planner.hpp"
#include "maxrange/units.hpp"
#include "maxrange/verification.hpp"

namespace maxrange::cli {
namespace {

using namespace maxrange::units;

struct Globals {
  std::string config;
  double rtol = 1e-9;
  std::string csv;
  std::string summary;
  double sample_spacing = 250.0;
};

struct Context {
  Globals globals;
  Config config;
  SolverSettings settings;
  std::ostream* out;
  std::ostream* err;
};

std::pair<double, double> parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError(fmt::format("{}: expected LO:HI, got '{}'", what, text));
  try {
    return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError(fmt::format("{}: expected LO:HI, got '{}'", what, text));
  }
}

std::vector<CruiseLevel> parse_levels(const std::string& text) {
  std::vector<CruiseLevel> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto [ft, nm] = parse_range(item, "--levels");
    levels.push_back({ft_to_m(ft), nm_to_m(nm)});
  }
  if (levels.empty()) throw ConfigError("--levels: at least one FT:NM pair is required");
  return levels;
}

nlohmann::json settings_json(const SolverSettings& s) {
  return {{"rtol", s.rtol}, {"atol", s.atol}, {"sample_spacing_m", s.sample_spacing}};
}

class Emitter {
 public:
  explicit Emitter(Context& ctx) : ctx_(ctx) {
    if (!ctx.globals.csv.empty()) {
      file_ = std::make_unique<std::ofstream>(ctx.globals.csv);
      if (!*file_) throw ConfigError(fmt::format("cannot write '{}'", ctx.globals.csv));
    }
  }

  std::ostream& csv() { return file_ ? *file_ : *ctx_.out; }

  void summary(nlohmann::json j) {
    j["settings"] = settings_json(ctx_.settings);
    const std::string text = j.dump(2) + "\n";
    if (ctx_.globals.summary.empty()) {
      *ctx_.err << text;
      return;
    }
    std::ofstream f(ctx_.globals.summary);
    if (!f) throw ConfigError(fmt::format("cannot write '{}'", ctx_.globals.summary));
    f << text;
  }

 private:
  Context& ctx_;
  std::unique_ptr<std::ofstream> file_;
};

void emit_trajectory(Context& ctx, const Trajectory& t) {
  Emitter e(ctx);
  write_csv(e.csv(), t);
  e.summary(summary_json(t));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Range-optimal quasi-steady trajectories for jet aircraft", "maxrange"};
  app.fallthrough();
  app.require_subcommand(1);
  Context ctx;
  ctx.out = &out;
  ctx.err = &err;
  Globals& g = ctx.globals;
  app.add_option("--config", g.config, "Aircraft configuration JSON (default: $MAXRANGE_CONFIG, else built-in SBJ)");
  app.add_option("--rtol", g.rtol, "Integrator relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--csv", g.csv, "Write CSV here instead of stdout");
  app.add_option("--summary", g.summary, "Write the JSON summary here instead of stderr");
  app.add_option("--sample-spacing", g.sample_spacing, "Output sample spacing [m]")->check(CLI::PositiveNumber);

  std::function<int()> action;

  // optimal-speed
  auto* speed = app.add_subcommand("optimal-speed", "Range-optimal state at one point");
  double alt_ft = 10000.0, weight = 58000.0;
  std::optional<double> gamma_deg, thrust;
  speed->add_option("--alt", alt_ft, "Altitude [ft]");
  speed->add_option("--weight", weight, "Weight [N]");
  auto* gopt = speed->add_option("--gamma", gamma_deg, "Path angle [deg]");
  auto* topt = speed->add_option("--thrust", thrust, "Thrust-to-weight ratio");
  gopt->excludes(topt);
  speed->callback([&] {
    action = [&] {
      const AircraftModel& ac = ctx.config.aircraft;
      const double h = ft_to_m(alt_ft);
      const double gamma = thrust ? gamma_from_thrust(ac.polar, *thrust) : deg_to_rad(gamma_deg.value_or(0.0));
      const double r = r_gamma(ac.polar, gamma);
      const double v = ac.speed(r, h, weight);
      const AeroState st = state_from_r(ac.polar, r, gamma);
      fmt::print(out, "alt_ft,W_N,gamma_deg,R,V_mps,V_kt,KIAS,T_over_W,CL\n");
      fmt::print(out, "{:.6g},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g}\n", alt_ft, weight,
                 rad_to_deg(gamma), r, v, mps_to_kt(v), mps_to_kt(ac.atmosphere.tas_to_kias(v, h)),
                 thrust_ratio(ac.polar, r, gamma), st.cl);
      return int{kOk};
    };
  });

  // contours
  auto* contours = app.add_subcommand("contours", "T/W over (gamma, R) with the optimality curve");
  std::string gamma_range = "-10:15", r_range = "0.5:12";
  int grid = 51;
  contours->add_option("--gamma-range", gamma_range, "LO:HI path angle [deg]");
  contours->add_option("--r-range", r_range, "LO:HI pressure ratio");
  contours->add_option("--grid", grid, "Points per axis")->check(CLI::Range(2, 2000));
  contours->callback([&] {
    action = [&] {
      const DragPolar& p = ctx.config.aircraft.polar;
      const auto [g0, g1] = parse_range(gamma_range, "--gamma-range");
      const auto [r0, r1] = parse_range(r_range, "--r-range");
      if (!(g1 > g0) || !(r1 > r0) || !(r0 > 0.0)) throw ConfigError("contours: ranges must be increasing, R > 0");
      Emitter e(ctx);
      auto& os = e.csv();
      fmt::print(os, "kind,gamma_rad,R,T_over_W\n");
      const auto at = [&](double lo, double hi, int i) { return lo + (hi - lo) * i / (grid - 1); };
      for (int i = 0; i < grid; ++i) {
        const double gamma = deg_to_rad(at(g0, g1, i));
        for (int j = 0; j < grid; ++j) {
          const double r = at(r0, r1, j);
          fmt::print(os, "grid,{:.10g},{:.10g},{:.10g}\n", gamma, r, thrust_ratio(p, r, gamma));
        }
      }
      // The curve is drawn finer than the grid and passes exactly through the
      // level point and the engine-out glide when they are in range.
      std::vector<double> curve;
      const int fine = std::max(201, 4 * grid);
      for (int i = 0; i < fine; ++i) curve.push_back(deg_to_rad(g0 + (g1 - g0) * i / (fine - 1)));
      for (double special : {0.0, gamma_from_thrust(p, 0.0)}) {
        if (special > deg_to_rad(g0) && special < deg_to_rad(g1)) curve.push_back(special);
      }
      std::sort(curve.begin(), curve.end());
      for (double gamma : curve) {
        const double r = r_gamma(p, gamma);
        fmt::print(os, "optimal,{:.10g},{:.10g},{:.10g}\n", gamma, r, thrust_ratio(p, r, gamma));
      }
      for (int i = 0; i < grid; ++i) {
        const double gamma = deg_to_rad(at(g0, g1, i));
        const double r = r_ld(p, gamma);
        fmt::print(os, "r_ld,{:.10g},{:.10g},{:.10g}\n", gamma, r, thrust_ratio(p, r, gamma));
      }
      for (int i = 0; i < grid; ++i) {
        const double gamma = deg_to_rad(at(g0, g1, i));
        const double r = r_zero(p);
        fmt::print(os, "r_zero,{:.10g},{:.10g},{:.10g}\n", gamma, r, thrust_ratio(p, r, gamma));
      }
      return int{kOk};
    };
  });

  // three-piece
  auto* three = app.add_subcommand("three-piece", "Climb, Euler-Lagrange transition, idle descent");
  std::optional<double> start_alt_ft, dest_alt_ft;
  double distance_nm = 500.0;
  bool sweep = false;
  three->add_option("--start-alt", start_alt_ft, "Start altitude [ft] (default: restriction ceiling)");
  three->add_option("--weight", weight, "Start weight [N]");
  three->add_option("--distance", distance_nm, "Destination distance [nm]");
  three->add_option("--dest-alt", dest_alt_ft, "Destination altitude [ft] (default: final approach fix)");
  three->add_flag("--sweep", sweep, "Transition start from 50 to 800 nm in 50 nm steps instead of shooting");
  three->callback([&] {
    action = [&] {
      const auto& lim = ctx.config.limits;
      const FlightState start{0.0, ft_to_m(start_alt_ft.value_or(lim.restriction_ceiling_ft)), weight, 0.0, 0.0};
      const double dest_alt = ft_to_m(dest_alt_ft.value_or(lim.final_approach_fix_ft));
      if (!sweep) {
        emit_trajectory(ctx, three_piece(ctx.config.aircraft, start, {nm_to_m(distance_nm), dest_alt}, ctx.settings));
        return int{kOk};
      }
      Emitter e(ctx);
      nlohmann::json runs = nlohmann::json::array();
      for (int run = 0; run < 16; ++run) {
        const double x_s = nm_to_m(50.0 * (run + 1));
        const Trajectory t = three_piece_candidate(ctx.config.aircraft, start, x_s, dest_alt, ctx.settings);
        write_csv(e.csv(), t, run == 0, run);
        runs.push_back(summary_json(t));
      }
      e.summary({{"runs", runs}});
      return int{kOk};
    };
  });

  // two-piece
  auto* two = app.add_subcommand("two-piece", "Speed-restricted climb to level-off at the ceiling");
  two->add_option("--weight", weight, "Start weight [N]");
  two->add_option("--start-alt", start_alt_ft, "Start altitude [ft] (default: acceleration altitude)");
  two->add_flag("--sweep", sweep, "Switch distance from 1 to 4 nm in 0.5 nm steps instead of shooting");
  two->callback([&] {
    action = [&] {
      const auto& lim = ctx.config.limits;
      const AircraftModel& ac = ctx.config.aircraft;
      const FlightState start{0.0, ft_to_m(start_alt_ft.value_or(lim.acceleration_altitude_ft)), weight, 0.0, 0.0};
      const SpeedLaw law = SpeedLaw::constant_ias(ac.atmosphere, kt_to_mps(lim.speed_restriction_kias));
      const double ceiling = ft_to_m(lim.restriction_ceiling_ft);
      if (!sweep) {
        emit_trajectory(ctx, two_piece_low_climb(ac, start, law, ceiling, ctx.settings));
        return int{kOk};
      }
      Emitter e(ctx);
      nlohmann::json runs = nlohmann::json::array();
      for (int run = 0; run < 7; ++run) {
        const double x_c = nm_to_m(1.0 + 0.5 * run);
        const Trajectory t = two_piece_candidate(ac, start, law, x_c, ceiling, 1e6, ctx.settings);
        write_csv(e.csv(), t, run == 0, run);
        runs.push_back(summary_json(t));
      }
      e.summary({{"runs", runs}});
      return int{kOk};
    };
  });

  // full-flight
  auto* full = app.add_subcommand("full-flight", "Complete flight from the acceleration altitude to the approach fix");
  full->add_option("--weight", weight, "Start weight [N]");
  full->add_option("--distance", distance_nm, "Destination distance [nm]");
  full->callback([&] {
    action = [&] {
      emit_trajectory(ctx, full_flight(ctx.config.aircraft, ctx.config.mission(weight, nm_to_m(distance_nm)),
                                       ctx.settings));
      return int{kOk};
    };
  });

  // level-change
  auto* levels_cmd = app.add_subcommand("level-change", "Level cruise segments joined by constant-R0 level changes");
  std::string levels;
  levels_cmd->add_option("--levels", levels, "Comma-separated FT:NM pairs, e.g. 30000:100,32000:200")->required();
  levels_cmd->add_option("--weight", weight, "Start weight [N]");
  levels_cmd->callback([&] {
    action = [&] {
      emit_trajectory(ctx, atc_cruise(ctx.config.aircraft, weight, parse_levels(levels), ctx.settings));
      return int{kOk};
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Run the acceptance cross-checks");
  std::optional<int> criterion;
  verify->add_option("--criterion", criterion, "Run one criterion only")->check(CLI::Range(1, kCriterionCount));
  verify->add_option("--weight", weight, "Mission weight [N]");
  verify->callback([&] {
    action = [&] {
      VerificationOptions o;
      o.aircraft = ctx.config.aircraft;
      o.settings = ctx.settings;
      o.weight = weight;
      const auto& lim = ctx.config.limits;
      o.speed_restriction_kias = lim.speed_restriction_kias;
      o.restriction_ceiling_ft = lim.restriction_ceiling_ft;
      o.acceleration_altitude_ft = lim.acceleration_altitude_ft;
      o.final_approach_fix_ft = lim.final_approach_fix_ft;
      bool all = true;
      for (int id = 1; id <= kCriterionCount; ++id) {
        if (criterion && *criterion != id) continue;
        const CriterionResult r = run_criterion(id, o);
        all = all && r.passed;
        out << format_result(r) << '\n';
      }
      return all ? int{kOk} : int{kInfeasible};
    };
  });

  // show-config
  auto* show = app.add_subcommand("show-config", "Print the effective configuration");
  show->callback([&] {
    action = [&] {
      out << emit_config(ctx.config);
      return int{kOk};
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? int{kOk} : int{kConfigInvalid};
  }

  try {
    std::string path = g.config;
    if (path.empty()) {
      if (const char* env = std::getenv(kConfigEnv); env != nullptr && *env != '\0') path = env;
    }
    if (!path.empty()) ctx.config = load_config(path);
    ctx.config.validate();
    ctx.settings.rtol = g.rtol;
    ctx.settings.sample_spacing = g.sample_spacing;
    return action();
  } catch (const ConfigError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kConfigInvalid;
  } catch (const PlanningError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInfeasible;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kInfeasible;
  }
}

}  // namespace maxrange::cli
