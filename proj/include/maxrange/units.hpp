#pragma once

#include <numbers>

namespace maxrange::units {

inline constexpr double kFoot = 0.3048;                  // m
inline constexpr double kNauticalMile = 1852.0;          // m
inline constexpr double kKnot = 1852.0 / 3600.0;         // m/s
inline constexpr double kDegree = std::numbers::pi / 180.0;

constexpr double ft_to_m(double ft) { return ft * kFoot; }
constexpr double m_to_ft(double m) { return m / kFoot; }
constexpr double nm_to_m(double nm) { return nm * kNauticalMile; }
constexpr double m_to_nm(double m) { return m / kNauticalMile; }
constexpr double kt_to_mps(double kt) { return kt * kKnot; }
constexpr double mps_to_kt(double v) { return v / kKnot; }
constexpr double deg_to_rad(double deg) { return deg * kDegree; }
constexpr double rad_to_deg(double rad) { return rad / kDegree; }

}  // namespace maxrange::units
