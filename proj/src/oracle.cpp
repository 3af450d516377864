#include "maxrange/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "maxrange/error.hpp"

namespace maxrange::oracle {
namespace {

double grid_minimize(const std::function<double(double)>& f, const Grid& grid, const char* what) {
  if (grid.points < 3 || !(grid.hi > grid.lo)) throw DomainError("oracle: degenerate grid");
  const double step = (grid.hi - grid.lo) / static_cast<double>(grid.points - 1);
  std::vector<double> values(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) values[i] = f(grid.lo + step * static_cast<double>(i));

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  if (best == 0 || best + 1 == grid.points) {
    throw DomainError(fmt::format("{}: minimum at grid boundary, grid too small", what));
  }
  // Unimodality: differences change sign exactly once.
  int sign_changes = 0;
  for (std::size_t i = 2; i < grid.points; ++i) {
    const double d0 = values[i - 1] - values[i - 2];
    const double d1 = values[i] - values[i - 1];
    if (d0 < 0.0 && d1 > 0.0) ++sign_changes;
    if (d0 > 0.0 && d1 < 0.0) ++sign_changes;
  }
  if (sign_changes > 1) throw DomainError(fmt::format("{}: objective is not unimodal on the grid", what));

  const double a = grid.lo + step * static_cast<double>(best - 1);
  const double b = grid.lo + step * static_cast<double>(best + 1);
  return golden_section(f, a, b, 1e-8);
}

}  // namespace

double golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double brute_min_r(const DragPolar& polar, double gamma, const Grid& grid) {
  const double s = std::sin(gamma);
  const double c2 = std::cos(gamma) * std::cos(gamma);
  const auto f = [&](double r) {
    const double sr = std::sqrt(r);
    return polar.cd0 * sr + polar.k * c2 / (r * sr) + s / sr;
  };
  return grid_minimize(f, grid, "brute_min_r");
}

double brute_min_r_ld(const DragPolar& polar, double gamma, const Grid& grid) {
  const double c2 = std::cos(gamma) * std::cos(gamma);
  const auto f = [&](double r) { return r * polar.cd0 + polar.k * c2 / r; };
  return grid_minimize(f, grid, "brute_min_r_ld");
}

double brute_fuel(const AircraftModel& aircraft, std::span<const double> xs, std::span<const double> hs, double w0,
                  const std::function<double(double gamma)>& r_of_gamma) {
  const std::size_t n = xs.size();
  if (n != hs.size()) throw DomainError("brute_fuel: xs and hs differ in length");
  if (n < 3) throw DomainError("brute_fuel: need at least three samples");
  for (std::size_t i = 1; i < n; ++i) {
    const double dx = xs[i] - xs[i - 1];
    if (!(dx > 0.0)) throw DomainError("brute_fuel: samples must be strictly increasing in x");
    if (dx > 50.0 + 1e-9) throw DomainError(fmt::format("brute_fuel: spacing {} m exceeds 50 m", dx));
  }

  // Fourth-order slopes: derivative of the Lagrange interpolant through five
  // neighbouring samples (shifted inward at the ends). Works on uneven grids.
  std::vector<double> slope(n, 0.0);
  const std::size_t width = std::min<std::size_t>(5, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t first = j >= width / 2 ? j - width / 2 : 0;
    first = std::min(first, n - width);
    const double x = xs[j];
    for (std::size_t k = first; k < first + width; ++k) {
      double weight = 0.0;
      for (std::size_t m = first; m < first + width; ++m) {
        if (m == k) continue;
        double term = 1.0 / (xs[k] - xs[m]);
        for (std::size_t l = first; l < first + width; ++l) {
          if (l != k && l != m) term *= (x - xs[l]) / (xs[k] - xs[l]);
        }
        weight += term;
      }
      slope[j] += weight * hs[k];
    }
  }

  const auto& polar = aircraft.polar;
  const auto integrand = [&](std::size_t i) {
    const double gamma = std::atan(slope[i]);
    const double c = std::cos(gamma);
    const double r = r_of_gamma(gamma);
    const double rho = aircraft.atmosphere.density(hs[i]);
    const double fuel_flow = aircraft.propulsion.c_sl *
                             std::pow(rho / aircraft.atmosphere.rho_sl, aircraft.propulsion.sfc_exponent);
    const double t_over_w = polar.cd0 * r + polar.k * c * c / r + std::sin(gamma);
    return -(fuel_flow / c) * t_over_w * std::sqrt(rho * aircraft.wing_area / (2.0 * r));
  };

  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = integrand(i);

  // Trapezoid sum, less the leading d^3 f''/12 error of each panel.
  std::vector<double> curvature(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double a = xs[i] - xs[i - 1], b = xs[i + 1] - xs[i];
    curvature[i] = 2.0 * (a * f[i + 1] - (a + b) * f[i] + b * f[i - 1]) / (a * b * (a + b));
  }
  curvature[0] = curvature[1];
  curvature[n - 1] = curvature[n - 2];

  double z = 2.0 * std::sqrt(w0);
  for (std::size_t i = 1; i < n; ++i) {
    const double d = xs[i] - xs[i - 1];
    z += 0.5 * d * (f[i - 1] + f[i]) - d * d * d * 0.5 * (curvature[i - 1] + curvature[i]) / 12.0;
  }
  return w0 - 0.25 * z * z;
}

double richardson_derivative(const std::function<double(double)>& f, double x, double h) {
  const auto central = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

double richardson_second_derivative(const std::function<double(double)>& f, double x, double h) {
  const double f0 = f(x);
  const auto central = [&](double step) { return (f(x + step) - 2.0 * f0 + f(x - step)) / (step * step); };
  return (4.0 * central(0.5 * h) - central(h)) / 3.0;
}

DerivativeReport finite_difference_check(const std::function<double(double)>& f,
                                         const std::function<double(double)>& fprime, std::span<const double> grid,
                                         double tol) {
  DerivativeReport report;
  if (grid.empty()) return report;
  std::vector<double> analytic(grid.size());
  double scale = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    analytic[i] = fprime(grid[i]);
    scale = std::max(scale, std::abs(analytic[i]));
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double h = 1e-3 * std::max(1.0, std::abs(x));
    const double numeric = richardson_derivative(f, x, h);
    const double denom = std::max({std::abs(analytic[i]), 1e-4 * scale, 1e-300});
    const double dev = std::abs(numeric - analytic[i]) / denom;
    if (dev > report.max_deviation || i == 0) {
      report.max_deviation = dev;
      report.worst_x = x;
    }
  }
  report.passed = report.max_deviation < tol;
  return report;
}

}  // namespace maxrange::oracle
