// Aircraft and limits configuration file (JSON). Units are part of the key
// names; limits are in the customary aviation units their keys name.
#pragma once

#include <filesystem>
#include <string>

#include "maxrange/aircraft.hpp"
#include "maxrange/planner.hpp"

namespace maxrange {

struct Limits {
  double speed_restriction_kias = 250.0;
  double restriction_ceiling_ft = 10000.0;
  double acceleration_altitude_ft = 1500.0;
  double final_approach_fix_ft = 3000.0;

  void validate() const;
};

struct Config {
  AircraftModel aircraft = sample_business_jet();
  Limits limits;

  void validate() const;

  /// Mission inputs of this configuration, for the given weight and distance [N, m].
  MissionSpec mission(double start_weight, double destination_distance) const;
};

/// Parses and validates. Throws ConfigError on syntax errors, missing or unknown keys.
Config parse_config(const std::string& text);
Config load_config(const std::filesystem::path& path);
std::string emit_config(const Config& config);

}  // namespace maxrange
