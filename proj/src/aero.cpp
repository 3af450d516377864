#include "maxrange/aero.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "maxrange/error.hpp"

namespace maxrange {
namespace {

void require_angle(double gamma) {
  if (!(std::abs(gamma) < std::numbers::pi / 2)) {
    throw DomainError(fmt::format("path angle {} rad outside (-pi/2, pi/2)", gamma));
  }
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw DomainError(fmt::format("{} must be positive, got {}", what, value));
  }
}

double checked_asin(double s, const char* what) {
  if (!(std::abs(s) <= 1.0)) {
    throw DomainError(fmt::format("{}: no real path angle (sin = {})", what, s));
  }
  return std::asin(s);
}

}  // namespace

void DragPolar::validate() const {
  if (!(cd0 > 0.0)) throw ConfigError(fmt::format("drag polar: cd0 must be positive, got {}", cd0));
  if (!(k > 0.0)) throw ConfigError(fmt::format("drag polar: k must be positive, got {}", k));
  if (!(12.0 * k * cd0 < 1.0)) {
    throw ConfigError(fmt::format("drag polar: 12 k cd0 = {} must be below 1", 12.0 * k * cd0));
  }
}

double pressure_ratio(const Atmosphere& atm, double v, double h, double w, double s) {
  if (!(v >= 0.0)) throw DomainError(fmt::format("negative speed {}", v));
  require_positive(w, "weight");
  require_positive(s, "wing area");
  return 0.5 * atm.density(h) * v * v * s / w;
}

double speed_from_r(const Atmosphere& atm, double r, double h, double w, double s) {
  require_positive(r, "pressure ratio");
  require_positive(w, "weight");
  require_positive(s, "wing area");
  return std::sqrt(2.0 * r * w / (atm.density(h) * s));
}

AeroState state_from_r(const DragPolar& polar, double r, double gamma) {
  require_positive(r, "pressure ratio");
  require_angle(gamma);
  const double c = std::cos(gamma);
  AeroState st;
  st.r = r;
  st.gamma = gamma;
  st.cl = c / r;
  st.cd = polar.cd0 + polar.k * st.cl * st.cl;
  st.lift_over_w = c;
  st.drag_over_w = polar.cd0 * r + polar.k * c * c / r;
  return st;
}

double thrust_ratio(const DragPolar& polar, double r, double gamma) {
  require_positive(r, "pressure ratio");
  const double c = std::cos(gamma);
  return polar.cd0 * r + polar.k * c * c / r + std::sin(gamma);
}

double r_ld(const DragPolar& polar, double gamma) {
  require_angle(gamma);
  return std::sqrt(polar.k / polar.cd0) * std::cos(gamma);
}

double min_thrust_ratio(const DragPolar& polar, double gamma) {
  require_angle(gamma);
  return 2.0 * std::sqrt(polar.k * polar.cd0) * std::cos(gamma) + std::sin(gamma);
}

double r_zero(const DragPolar& polar) { return std::sqrt(3.0 * polar.k / polar.cd0); }

double r_gamma(const DragPolar& polar, double gamma) {
  require_angle(gamma);
  const double s = std::sin(gamma);
  const double c = std::cos(gamma);
  return (s + std::sqrt(s * s + 12.0 * polar.k * polar.cd0 * c * c)) / (2.0 * polar.cd0);
}

double tau(const DragPolar& polar, double gamma) { return thrust_ratio(polar, r_gamma(polar, gamma), gamma); }

double gamma_from_thrust(const DragPolar& polar, double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError(fmt::format("thrust ratio {} outside the supported range [0, 1]", t));
  }
  const double kc = polar.k * polar.cd0;
  const double radicand = t * t * (1.0 - 12.0 * kc) + 64.0 * kc * kc + 16.0 * kc;
  if (radicand < 0.0) throw DomainError(fmt::format("thrust ratio {} has no optimal path angle", t));
  const double s = (2.0 * t - std::sqrt(radicand)) / (2.0 * (1.0 + 4.0 * kc));
  return checked_asin(s, "gamma_from_thrust");
}

double gamma_from_r(const DragPolar& polar, double r) {
  require_positive(r, "pressure ratio");
  const double k = polar.k;
  const double radicand = r * r + 36.0 * k * k - 12.0 * k * polar.cd0 * r * r;
  if (radicand < 0.0) throw DomainError(fmt::format("pressure ratio {} is not range-optimal at any angle", r));
  return checked_asin((r - std::sqrt(radicand)) / (6.0 * k), "gamma_from_r");
}

double gamma_fixed_r_thrust(const DragPolar& polar, double r, double t) {
  require_positive(r, "pressure ratio");
  const double k = polar.k;
  const double radicand = r * r - 4.0 * k * r * t + 4.0 * k * polar.cd0 * r * r + 4.0 * k * k;
  if (radicand < 0.0) {
    throw DomainError(fmt::format("thrust infeasible at this speed (R = {}, T/W = {})", r, t));
  }
  return checked_asin((r - std::sqrt(radicand)) / (2.0 * k), "gamma_fixed_r_thrust");
}

double stall_speed(const Atmosphere& atm, double r_stall, double w, double h, double s) {
  return speed_from_r(atm, r_stall, h, w, s);
}

}  // namespace maxrange
