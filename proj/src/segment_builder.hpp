// Shared plumbing for the segment integrators: stop conditions to event
// monitors, and dense resampling of a solution path into a Segment.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "maxrange/segments.hpp"

namespace maxrange::detail {

/// Maps (x, y) to a fully derived sample. y.back() is elapsed time.
using SampleFunction = std::function<SegmentSample(double x, std::span<const double> y)>;

struct SegmentModel {
  Phase phase = Phase::PlanFollowing;
  const AircraftModel* aircraft = nullptr;
  ode::RhsFunction rhs;
  SampleFunction sample;
  /// Extra terminal monitors owned by the integrator (e.g. guards). Hitting
  /// one calls on_guard, which is expected to throw.
  std::vector<ode::EventMonitor> guards;
  std::function<void(std::size_t guard, const SegmentSample&)> on_guard;
};

struct BuiltSegment {
  Segment segment;
  ode::SolutionPath path;
};

BuiltSegment build_segment(const SegmentModel& model, const ode::Vector& initial, double x_begin,
                           const StopConditions& stops, const SolverSettings& settings);

/// Derived quantities for a state with known pressure ratio and thrust.
SegmentSample make_sample(const AircraftModel& aircraft, double x, double h, double w, double gamma, double r,
                          double thrust, double time, double slack);

/// Same, with the true airspeed supplied instead of derived from R.
SegmentSample make_sample_with_speed(const AircraftModel& aircraft, double x, double h, double w, double gamma,
                                     double r, double v, double thrust, double time, double slack);

}  // namespace maxrange::detail
