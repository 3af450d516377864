#include "maxrange/odekit.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "maxrange/error.hpp"

namespace maxrange::ode {
namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kEventTolerance = 1e-10;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

class Stepper {
 public:
  explicit Stepper(const OdeProblem& p) : p_(p), n_(p.initial.size()) {
    for (auto* k : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &tmp_, &ynew_, &err_}) k->resize(n_);
  }

  void eval(double x, std::span<const double> y, std::span<double> f) const {
    p_.rhs(x, y, f);
    if (!all_finite(f)) {
      throw IntegrationError(fmt::format("right-hand side is not finite at x = {}", x), x,
                             Vector(y.begin(), y.end()));
    }
  }

  double weighted_norm(std::span<const double> v, std::span<const double> y0, std::span<const double> y1) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      const double sc = p_.atol + p_.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
      const double r = v[i] / sc;
      sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(n_));
  }

  double initial_step(double x, const Vector& y, const Vector& f) {
    const double d0 = weighted_norm(y, y, y);
    const double d1 = weighted_norm(f, y, y);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, p_.x_end - x);
    for (std::size_t i = 0; i < n_; ++i) tmp_[i] = y[i] + h0 * f[i];
    eval(x + h0, tmp_, k2_);
    for (std::size_t i = 0; i < n_; ++i) err_[i] = (k2_[i] - f[i]) / h0;
    const double d2 = weighted_norm(err_, y, y);
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, p_.max_step, p_.x_end - x});
  }

  // One trial step of size h from (x, y) with y' = f. Returns the error norm;
  // ynew_ and k7_ hold the candidate state and its derivative.
  double trial(double x, const Vector& y, const Vector& f, double h) {
    const auto stage = [&](std::initializer_list<std::pair<double, const Vector*>> terms) {
      for (std::size_t i = 0; i < n_; ++i) {
        double acc = y[i];
        for (const auto& [a, k] : terms) acc += h * a * (*k)[i];
        tmp_[i] = acc;
      }
    };
    k1_ = f;
    stage({{a21, &k1_}});
    eval(x + c2 * h, tmp_, k2_);
    stage({{a31, &k1_}, {a32, &k2_}});
    eval(x + c3 * h, tmp_, k3_);
    stage({{a41, &k1_}, {a42, &k2_}, {a43, &k3_}});
    eval(x + c4 * h, tmp_, k4_);
    stage({{a51, &k1_}, {a52, &k2_}, {a53, &k3_}, {a54, &k4_}});
    eval(x + c5 * h, tmp_, k5_);
    stage({{a61, &k1_}, {a62, &k2_}, {a63, &k3_}, {a64, &k4_}, {a65, &k5_}});
    eval(x + h, tmp_, k6_);
    for (std::size_t i = 0; i < n_; ++i) {
      ynew_[i] = y[i] + h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] + b5 * k5_[i] + b6 * k6_[i]);
    }
    eval(x + h, ynew_, k7_);
    for (std::size_t i = 0; i < n_; ++i) {
      err_[i] = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] + e6 * k6_[i] + e7 * k7_[i]);
    }
    return weighted_norm(err_, y, ynew_);
  }

  const Vector& candidate() const { return ynew_; }
  const Vector& candidate_derivative() const { return k7_; }

 private:
  const OdeProblem& p_;
  std::size_t n_;
  Vector k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, ynew_, err_;
};

bool crosses(double g0, double g1, Crossing c) {
  const bool rising = g0 < 0.0 && g1 >= 0.0;
  const bool falling = g0 > 0.0 && g1 <= 0.0;
  switch (c) {
    case Crossing::Rising: return rising;
    case Crossing::Falling: return falling;
    case Crossing::Either: return rising || falling;
  }
  return false;
}

}  // namespace

Vector hermite(double x0, std::span<const double> y0, std::span<const double> f0, double x1,
               std::span<const double> y1, std::span<const double> f1, double x) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  Vector y(y0.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    y[i] = h00 * y0[i] + h10 * h * f0[i] + h01 * y1[i] + h11 * h * f1[i];
  }
  return y;
}

Vector SolutionPath::at(double x) const {
  if (xs_.empty()) throw DomainError("empty solution path");
  if (x < xs_.front() || x > xs_.back()) {
    throw DomainError(fmt::format("x = {} outside solution span [{}, {}]", x, xs_.front(), xs_.back()));
  }
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - xs_.begin());
  if (j < xs_.size() && xs_[j] == x) return ys_[j];
  const std::size_t i = j - 1;
  return hermite(xs_[i], ys_[i], fs_[i], xs_[j], ys_[j], fs_[j], x);
}

SolutionPath integrate(const OdeProblem& p) {
  if (!p.rhs) throw DomainError("ode: missing right-hand side");
  if (p.initial.empty()) throw DomainError("ode: empty initial state");
  if (!(p.rtol > 0.0) || !(p.atol > 0.0)) throw DomainError("ode: tolerances must be positive");
  if (!(p.x_end > p.x_begin)) {
    throw DomainError(fmt::format("ode: empty span [{}, {}]", p.x_begin, p.x_end));
  }
  if (!all_finite(p.initial)) throw DomainError("ode: non-finite initial state");

  const std::size_t n = p.initial.size();
  Stepper stepper(p);
  SolutionPath path;

  double x = p.x_begin;
  Vector y = p.initial;
  Vector f(n);
  stepper.eval(x, y, f);
  path.xs_.push_back(x);
  path.ys_.push_back(y);
  path.fs_.push_back(f);

  std::vector<double> g_prev(p.events.size());
  for (std::size_t e = 0; e < p.events.size(); ++e) g_prev[e] = p.events[e].fn(x, y);

  double h = stepper.initial_step(x, y, f);
  bool last_rejected = false;
  std::size_t steps = 0;

  while (x < p.x_end) {
    if (++steps > p.max_steps) {
      throw IntegrationError(fmt::format("ode: exceeded {} steps", p.max_steps), x, y);
    }
    const double remaining = p.x_end - x;
    h = std::min({h, remaining, p.max_step});
    // Avoid a sliver of a final step.
    if (remaining - h < 1e-3 * h) h = remaining;
    const double h_min = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
    if (h < h_min) {
      throw IntegrationError(fmt::format("ode: step size underflow at x = {} (h = {})", x, h), x, y);
    }

    const double err = stepper.trial(x, y, f, h);
    if (!(err <= 1.0)) {
      ++path.rejected_;
      const double factor = std::isfinite(err) ? std::max(kMinFactor, kSafety * std::pow(err, -0.2)) : kMinFactor;
      h *= std::min(1.0, factor);
      last_rejected = true;
      continue;
    }

    const double x_new = (h == remaining) ? p.x_end : x + h;
    const Vector& y_new = stepper.candidate();
    const Vector& f_new = stepper.candidate_derivative();

    // Events over [x, x_new].
    std::optional<EventHit> earliest;
    std::vector<EventHit> hits;
    std::vector<double> g_new(p.events.size());
    for (std::size_t e = 0; e < p.events.size(); ++e) {
      const auto& ev = p.events[e];
      g_new[e] = ev.fn(x_new, y_new);
      if (!crosses(g_prev[e], g_new[e], ev.crossing)) continue;
      const auto g_at = [&](double xi) {
        if (xi == x_new) return g_new[e];
        if (xi == x) return g_prev[e];
        const Vector yi = hermite(x, y, f, x_new, y_new, f_new, xi);
        return ev.fn(xi, yi);
      };
      EventHit hit{e, x_new, g_new[e]};
      if (g_new[e] != 0.0) {
        const auto root = root_find(g_at, x, x_new, {.x_tol = 0.0, .f_tol = kEventTolerance * ev.scale});
        hit.x = root.x;
        hit.residual = root.f;
      }
      if (ev.terminal) {
        if (!earliest || hit.x < earliest->x) earliest = hit;
      } else {
        hits.push_back(hit);
      }
    }
    if (earliest) {
      std::erase_if(hits, [&](const EventHit& hh) { return hh.x > earliest->x; });
    }
    std::sort(hits.begin(), hits.end(), [](const EventHit& a, const EventHit& b) { return a.x < b.x; });
    path.events_.insert(path.events_.end(), hits.begin(), hits.end());

    if (earliest) {
      const double xe = earliest->x;
      Vector ye = xe == x_new ? y_new : hermite(x, y, f, x_new, y_new, f_new, xe);
      Vector fe(n);
      stepper.eval(xe, ye, fe);
      if (xe > x) {
        path.xs_.push_back(xe);
        path.ys_.push_back(std::move(ye));
        path.fs_.push_back(std::move(fe));
      }
      path.termination_ = Termination::Event;
      path.terminal_event_ = earliest;
      return path;
    }

    x = x_new;
    y = y_new;
    f = f_new;
    g_prev = std::move(g_new);
    path.xs_.push_back(x);
    path.ys_.push_back(y);
    path.fs_.push_back(f);

    double factor = err == 0.0 ? kMaxFactor : kSafety * std::pow(err, -0.2);
    factor = std::clamp(factor, kMinFactor, kMaxFactor);
    if (last_rejected) factor = std::min(factor, 1.0);
    h *= factor;
    last_rejected = false;
  }
  path.termination_ = Termination::SpanEnd;
  return path;
}

RootResult root_find(const std::function<double(double)>& f, double lo, double hi, const RootOptions& options) {
  double a = lo;
  double b = hi;
  double fa = f(a);
  double fb = f(b);
  double fa_true = fa;  // fa is scaled by the Illinois modification
  if (!std::isfinite(fa) || !std::isfinite(fb)) {
    throw DomainError(fmt::format("root_find: non-finite value at bracket ends [{}, {}]", lo, hi));
  }
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa > 0.0) == (fb > 0.0)) {
    throw DomainError(fmt::format("root_find: no sign change on [{}, {}] (f = {}, {})", lo, hi, fa, fb));
  }

  int slow = 0;
  double width = std::abs(b - a);
  for (int it = 1; it <= options.max_iterations; ++it) {
    double c = b - fb * (b - a) / (fb - fa);
    const double left = std::min(a, b);
    const double right = std::max(a, b);
    if (slow >= 2 || !(c > left && c < right)) {
      c = 0.5 * (a + b);
      slow = 0;
    }
    const double fc = f(c);
    if (!std::isfinite(fc)) throw DomainError(fmt::format("root_find: non-finite value at x = {}", c));
    if (std::abs(fc) <= options.f_tol || fc == 0.0) return {c, fc, it};
    if ((fc > 0.0) != (fb > 0.0)) {
      a = b;
      fa = fb;
      fa_true = fb;
    } else {
      fa *= 0.5;
    }
    b = c;
    fb = fc;

    const double new_width = std::abs(b - a);
    slow = new_width > 0.5 * width ? slow + 1 : 0;
    width = new_width;
    const double floor = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
    if (width <= std::max(options.x_tol, floor)) {
      return std::abs(fa_true) < std::abs(fb) ? RootResult{a, fa_true, it} : RootResult{b, fb, it};
    }
  }
  return std::abs(fa_true) < std::abs(fb) ? RootResult{a, fa_true, options.max_iterations}
                                          : RootResult{b, fb, options.max_iterations};
}

}  // namespace maxrange::ode
