// Adaptive explicit Runge-Kutta integration with dense output and event
// location, plus a bracketing scalar root finder.
//
// The stepper is the Dormand-Prince 5(4) pair with local extrapolation and
// FSAL. Dense output between accepted steps is cubic Hermite on (y, y').
#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace maxrange::ode {

using Vector = std::vector<double>;
using RhsFunction = std::function<void(double x, std::span<const double> y, std::span<double> dydx)>;
using MonitorFunction = std::function<double(double x, std::span<const double> y)>;

enum class Crossing { Rising, Falling, Either };

struct EventMonitor {
  MonitorFunction fn;
  Crossing crossing = Crossing::Either;
  double scale = 1.0;  ///< located to |fn| < 1e-10 * scale
  bool terminal = true;
};

struct OdeProblem {
  RhsFunction rhs;
  Vector initial;
  double x_begin = 0.0;
  double x_end = 0.0;
  double rtol = 1e-9;
  double atol = 1e-12;
  double max_step = std::numeric_limits<double>::infinity();
  std::vector<EventMonitor> events;
  std::size_t max_steps = 2'000'000;
};

enum class Termination { SpanEnd, Event };

struct EventHit {
  std::size_t monitor = 0;
  double x = 0.0;
  double residual = 0.0;
};

class SolutionPath {
 public:
  SolutionPath() = default;

  std::size_t size() const noexcept { return xs_.size(); }
  std::span<const double> xs() const noexcept { return xs_; }
  const Vector& state(std::size_t i) const { return ys_.at(i); }
  const Vector& derivative(std::size_t i) const { return fs_.at(i); }

  double x_front() const { return xs_.front(); }
  double x_back() const { return xs_.back(); }
  const Vector& final_state() const { return ys_.back(); }

  /// Interpolated state; exact at accepted steps. Throws outside the path.
  Vector at(double x) const;

  Termination termination() const noexcept { return termination_; }
  /// Terminal event, when termination() == Event.
  const std::optional<EventHit>& terminal_event() const noexcept { return terminal_event_; }
  /// Non-terminal event crossings in order of occurrence.
  const std::vector<EventHit>& events() const noexcept { return events_; }
  std::size_t rejected_steps() const noexcept { return rejected_; }

 private:
  friend SolutionPath integrate(const OdeProblem&);

  std::vector<double> xs_;
  std::vector<Vector> ys_;
  std::vector<Vector> fs_;
  Termination termination_ = Termination::SpanEnd;
  std::optional<EventHit> terminal_event_;
  std::vector<EventHit> events_;
  std::size_t rejected_ = 0;
};

/// Integrates from x_begin to x_end (x_end > x_begin) or the first terminal event.
/// Throws IntegrationError on step-size underflow or a non-finite right-hand side.
SolutionPath integrate(const OdeProblem& problem);

/// Cubic Hermite interpolation on one step.
Vector hermite(double x0, std::span<const double> y0, std::span<const double> f0, double x1,
               std::span<const double> y1, std::span<const double> f1, double x);

struct RootOptions {
  double x_tol = 0.0;  ///< absolute bracket width at which to stop (0: machine precision)
  double f_tol = 0.0;  ///< stop once |f| <= f_tol
  int max_iterations = 200;
};

struct RootResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};

/// Bracketing root finder: Illinois-modified secant steps, falling back to
/// bisection when the bracket stops shrinking. Throws DomainError without a sign change.
RootResult root_find(const std::function<double(double)>& f, double lo, double hi, const RootOptions& options = {});

}  // namespace maxrange::ode
