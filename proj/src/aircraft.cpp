#include "maxrange/aircraft.hpp"

#include <fmt/format.h>

#include "maxrange/error.hpp"

namespace maxrange {

void AircraftModel::validate() const {
  if (!(wing_area > 0.0)) throw ConfigError(fmt::format("aircraft: wing area must be positive, got {}", wing_area));
  if (!(r_stall > 0.0)) throw ConfigError(fmt::format("aircraft: r_stall must be positive, got {}", r_stall));
  polar.validate();
  atmosphere.validate();
  propulsion.validate();
}

AircraftModel sample_business_jet() { return AircraftModel{}; }

}  // namespace maxrange
