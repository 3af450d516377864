// Assembly of segments into complete trajectories, with one-dimensional
// shooting on the switch point of each multi-piece construction.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "maxrange/segments.hpp"
#include "maxrange/units.hpp"

namespace maxrange {

struct JoinRecord {
  std::size_t left = 0;  ///< index of the segment before the join
  double x = 0.0;
  double dh = 0.0;
  double dw = 0.0;
  double dgamma = 0.0;
  double dv = 0.0;
  double dthrust = 0.0;
  bool angle_jump_allowed = false;
  bool speed_jump_allowed = false;
};

/// Fuel of one level change, exact and by the linearized estimate
/// (C/V) (W0 (h1 - h0) + T0 (x1 - x0)).
struct LevelChangeFuel {
  double h0 = 0.0;
  double h1 = 0.0;
  double exact = 0.0;
  double approximate = 0.0;
};

struct Trajectory {
  std::vector<Segment> segments;  ///< sample times are cumulative from the first segment
  std::vector<JoinRecord> joins;
  std::vector<ThrustJump> thrust_jumps;
  std::vector<LevelChangeFuel> level_change_fuel;
  double fuel = 0.0;
  double distance = 0.0;
  double time = 0.0;
  std::optional<double> shooting_parameter;  ///< x_s or x_c [m], relative to the start
  std::optional<double> descent_ias_at_ceiling;  ///< [m/s] indicated, when the descent crosses the ceiling
  std::optional<bool> deceleration_needed;

  const Segment& segment(Phase phase) const;
  bool has_phase(Phase phase) const;
};

/// Segments whose end states must chain. Checks continuity and fills joins
/// and totals; throws PlanningError on a discontinuity that is not allowed.
Trajectory assemble(std::vector<Segment> segments, std::vector<ThrustJump> thrust_jumps = {});

struct Destination {
  double distance = 0.0;  ///< absolute x [m]
  double altitude = 0.0;  ///< [m]
};

struct ShootingSettings {
  double distance_tolerance = 1.0;        ///< [m]
  double altitude_tolerance = 1.0;        ///< [m]
  double bracket_step = units::kNauticalMile;    ///< outward search step [m]
  double max_parameter = 4000.0 * units::kNauticalMile;
  double ceiling_margin = 2000.0 * units::kFoot; ///< candidates climbing past ceiling + margin count as overshoot
};

/// Max-thrust climb for x_s, Euler-Lagrange transition to idle thrust, idle
/// descent to the destination altitude.
Trajectory three_piece_candidate(const AircraftModel& aircraft, const FlightState& start, double x_s,
                                 double destination_altitude, const SolverSettings& settings = {});

/// three_piece_candidate with x_s chosen so the descent ends at the destination distance.
Trajectory three_piece(const AircraftModel& aircraft, const FlightState& start, const Destination& destination,
                       const SolverSettings& settings = {}, const ShootingSettings& shooting = {});

/// Speed-restricted max-thrust climb for x_c, then speed-restricted
/// Euler-Lagrange piece to level flight.
Trajectory two_piece_candidate(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law,
                               double x_c, double ceiling, double ceiling_margin,
                               const SolverSettings& settings = {});

/// Level-off altitude of two_piece_candidate; overshoot past ceiling + margin
/// returns ceiling + margin.
double two_piece_level_off(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law, double x_c,
                           double ceiling, double ceiling_margin, const SolverSettings& settings = {});

/// two_piece_candidate with x_c chosen so the level-off is at the ceiling.
Trajectory two_piece_low_climb(const AircraftModel& aircraft, const FlightState& start, const SpeedLaw& law,
                               double ceiling, const SolverSettings& settings = {},
                               const ShootingSettings& shooting = {});

struct MissionSpec {
  double start_weight = 58000.0;                       ///< [N]
  double destination_distance = 500.0 * units::kNauticalMile; ///< [m]
  double destination_altitude = 3000.0 * units::kFoot;        ///< final approach fix [m]
  double speed_restriction = 250.0 * units::kKnot;            ///< indicated [m/s]
  double restriction_ceiling = 10000.0 * units::kFoot;        ///< [m]
  double acceleration_altitude = 1500.0 * units::kFoot;       ///< [m]
  double first_marker_distance = 1.0 * units::kNauticalMile;
  double second_marker_distance = 6.0 * units::kNauticalMile;
  double marker_entry_stall_factor = 1.2;              ///< first marker entry speed / stall speed
  std::optional<double> marker_fuel;                   ///< fixed fuel per marker [N]

  void validate() const;
};

/// Level acceleration over `distance` from v_in to v_out at max thrust.
Segment acceleration_marker(const AircraftModel& aircraft, const FlightState& entry, double v_in, double v_out,
                            double distance, std::optional<double> fuel = std::nullopt);

Trajectory full_flight(const AircraftModel& aircraft, const MissionSpec& mission, const SolverSettings& settings = {},
                       const ShootingSettings& shooting = {});

struct CruiseLevel {
  double altitude = 0.0;  ///< [m]
  double distance = 0.0;  ///< level-flight distance at this altitude [m]
};

/// Level cruise at R0 on each level, joined by constant-R0 level changes.
Trajectory atc_cruise(const AircraftModel& aircraft, double start_weight, const std::vector<CruiseLevel>& levels,
                      const SolverSettings& settings = {});

struct TopOfDescent {
  double x = 0.0;
  double h = 0.0;
  std::size_t segment = 0;
};

/// Altitude maximum of the trajectory, refined parabolically between samples.
TopOfDescent top_of_descent(const Trajectory& trajectory);

/// Path angle at which prescribed max-thrust climbs settle under power-law propulsion.
double stationary_climb_angle(const AircraftModel& aircraft, double h = 0.0);

}  // namespace maxrange
