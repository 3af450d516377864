// The acceptance suite: cross-checks of the closed forms, integrators and
// planners against the oracles and against the published figures.
#pragma once

#include <string>
#include <vector>

#include "maxrange/aircraft.hpp"
#include "maxrange/segments.hpp"

namespace maxrange {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerificationOptions {
  AircraftModel aircraft = sample_business_jet();
  SolverSettings settings;
  double weight = 58000.0;  ///< mission weight [N]
  double speed_restriction_kias = 250.0;
  double restriction_ceiling_ft = 10000.0;
  double acceleration_altitude_ft = 1500.0;
  double final_approach_fix_ft = 3000.0;
};

inline constexpr int kCriterionCount = 12;

/// Runs one criterion (1..12). Never throws; failures are reported in the result.
CriterionResult run_criterion(int id, const VerificationOptions& options);

std::vector<CriterionResult> run_all_criteria(const VerificationOptions& options);

/// One line per criterion: "[PASS] 1 title (0.001 s): detail".
std::string format_result(const CriterionResult& result);

}  // namespace maxrange
