// CSV and JSON emission of trajectories.
#pragma once

#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "maxrange/planner.hpp"

namespace maxrange {

/// Fixed column order, SI units.
inline constexpr const char* kCsvHeader = "x_m,h_m,V_mps,gamma_rad,W_N,T_N,T_over_W,R,CL,time_s,phase";

/// Writes the header (plus ",run" when `run` is given) if `header` is set, then
/// one row per sample. Join points shared by consecutive segments are written once.
void write_csv(std::ostream& out, const Trajectory& trajectory, bool header = true,
               std::optional<int> run = std::nullopt);

nlohmann::json summary_json(const Trajectory& trajectory);

}  // namespace maxrange
