#include "maxrange/output.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "maxrange/error.hpp"

namespace maxrange {

void write_csv(std::ostream& out, const Trajectory& trajectory, bool header, std::optional<int> run) {
  if (header) out << kCsvHeader << (run ? ",run" : "") << '\n';
  const SegmentSample* prev = nullptr;
  for (const auto& seg : trajectory.segments) {
    const std::string_view phase = phase_name(seg.phase);
    for (const auto& s : seg.samples) {
      if (prev != nullptr && prev->state.x == s.state.x && prev->state.w == s.state.w) {
        prev = &s;
        continue;
      }
      fmt::print(out, "{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{}", s.state.x,
                 s.state.h, s.v, s.state.gamma, s.state.w, s.thrust, s.thrust_ratio, s.state.r, s.cl, s.time, phase);
      if (run) fmt::print(out, ",{}", *run);
      out << '\n';
      prev = &s;
    }
  }
}

nlohmann::json summary_json(const Trajectory& t) {
  using nlohmann::json;
  json j;
  j["totals"] = {{"fuel_N", t.fuel}, {"distance_m", t.distance}, {"time_s", t.time}};
  json segments = json::array();
  for (const auto& s : t.segments) {
    segments.push_back({{"phase", phase_name(s.phase)},
                        {"x_begin_m", s.front().state.x},
                        {"x_end_m", s.back().state.x},
                        {"h_begin_m", s.front().state.h},
                        {"h_end_m", s.back().state.h},
                        {"fuel_N", s.fuel_burned()},
                        {"all_feasible", s.all_feasible()}});
  }
  j["segments"] = segments;
  json joins = json::array();
  for (const auto& jr : t.joins) {
    joins.push_back({{"after_segment", jr.left},
                     {"x_m", jr.x},
                     {"dh_m", jr.dh},
                     {"dW_N", jr.dw},
                     {"dgamma_rad", jr.dgamma},
                     {"dV_mps", jr.dv},
                     {"dT_N", jr.dthrust},
                     {"angle_jump_allowed", jr.angle_jump_allowed},
                     {"speed_jump_allowed", jr.speed_jump_allowed}});
  }
  j["joins"] = joins;
  json jumps = json::array();
  for (const auto& tj : t.thrust_jumps) {
    jumps.push_back({{"x_m", tj.x},
                     {"h_m", tj.h},
                     {"T_before_N", tj.thrust_before},
                     {"T_after_N", tj.thrust_after},
                     {"gamma_before_rad", tj.gamma_before},
                     {"gamma_after_rad", tj.gamma_after}});
  }
  j["thrust_jumps"] = jumps;
  if (!t.level_change_fuel.empty()) {
    json lc = json::array();
    for (const auto& f : t.level_change_fuel) {
      lc.push_back({{"h0_m", f.h0}, {"h1_m", f.h1}, {"exact_N", f.exact}, {"approximate_N", f.approximate}});
    }
    j["level_change_fuel"] = lc;
  }
  try {
    const TopOfDescent tod = top_of_descent(t);
    j["top_of_descent"] = {{"x_m", tod.x}, {"h_m", tod.h}, {"phase", phase_name(t.segments[tod.segment].phase)}};
  } catch (const PlanningError&) {
    j["top_of_descent"] = nullptr;
  }
  if (t.shooting_parameter) j["shooting_parameter_m"] = *t.shooting_parameter;
  if (t.descent_ias_at_ceiling) {
    j["descent_ias_at_ceiling_mps"] = *t.descent_ias_at_ceiling;
    j["deceleration_needed"] = *t.deceleration_needed;
  }
  return j;
}

}  // namespace maxrange
