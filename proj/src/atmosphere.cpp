#include "maxrange/atmosphere.hpp"

#include <cmath>

#include <fmt/format.h>

#include "maxrange/error.hpp"

namespace maxrange {

void Atmosphere::validate() const {
  if (!(rho_sl > 0.0) || !std::isfinite(rho_sl)) {
    throw ConfigError(fmt::format("atmosphere: rho_sl must be positive, got {}", rho_sl));
  }
  if (!(scale_height > 0.0) || !std::isfinite(scale_height)) {
    throw ConfigError(fmt::format("atmosphere: scale_height must be positive, got {}", scale_height));
  }
}

double Atmosphere::density(double h) const { return rho_sl * density_ratio(h); }

double Atmosphere::density_ratio(double h) const {
  if (!(h >= kMinAltitude)) {
    throw DomainError(fmt::format("altitude {} m is below the model floor of {} m", h, kMinAltitude));
  }
  return std::exp(-h / scale_height);
}

double Atmosphere::kias_to_tas(double v_ias, double h) const {
  if (!(v_ias >= 0.0)) throw DomainError(fmt::format("negative airspeed {}", v_ias));
  return v_ias / std::sqrt(density_ratio(h));
}

double Atmosphere::tas_to_kias(double v_tas, double h) const {
  if (!(v_tas >= 0.0)) throw DomainError(fmt::format("negative airspeed {}", v_tas));
  return v_tas * std::sqrt(density_ratio(h));
}

}  // namespace maxrange
