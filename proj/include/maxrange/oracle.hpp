// Slow, deliberately naive cross-checks for the closed forms and integrators.
// Nothing here calls into aero.hpp or the segment integrators.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "maxrange/aircraft.hpp"

namespace maxrange::oracle {

struct Grid {
  double lo = 0.1;
  double hi = 50.0;
  std::size_t points = 10000;
};

/// Minimizer over R of cd0 sqrt(R) + k cos^2(g) R^-3/2 + sin(g) R^-1/2
/// by grid scan and golden-section refinement to 1e-8.
double brute_min_r(const DragPolar& polar, double gamma, const Grid& grid = {});

/// Minimizer over R of R cd0 + k cos^2(g) / R.
double brute_min_r_ld(const DragPolar& polar, double gamma, const Grid& grid = {});

/// Golden-section minimizer of a unimodal function on [a, b].
double golden_section(const std::function<double(double)>& f, double a, double b, double tol);

/// Fuel [N] along a sampled plan h(x), with the pressure ratio chosen by
/// `r_of_gamma`. Composite trapezoid rule on dZ/dx with Z = 2 sqrt(W),
/// with a per-panel curvature correction.
/// Slopes come from five-point differences of the samples.
/// Sample spacing must not exceed 50 m.
double brute_fuel(const AircraftModel& aircraft, std::span<const double> xs, std::span<const double> hs,
                  double w0, const std::function<double(double gamma)>& r_of_gamma);

struct DerivativeReport {
  double max_deviation = 0.0;  ///< max relative deviation over the grid
  double worst_x = 0.0;
  bool passed = false;
};

/// Compares `fprime` against Richardson-extrapolated central differences of `f`.
/// Deviation is relative to max(|f'(x)|, 1e-4 * max_grid |f'|).
DerivativeReport finite_difference_check(const std::function<double(double)>& f,
                                         const std::function<double(double)>& fprime,
                                         std::span<const double> grid, double tol);

/// Richardson-extrapolated central difference at x with base step h.
double richardson_derivative(const std::function<double(double)>& f, double x, double h);

/// Richardson-extrapolated second central difference.
double richardson_second_derivative(const std::function<double(double)>& f, double x, double h);

}  // namespace maxrange::oracle
