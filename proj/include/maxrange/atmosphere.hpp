// Exponential air-density model.
#pragma once

namespace maxrange {

/// rho(h) = rho_sl * exp(-h / scale_height). The only density source in the library.
struct Atmosphere {
  double rho_sl = 1.225;         ///< sea-level density [kg/m^3]
  double scale_height = 9042.0;  ///< e-folding altitude [m]

  /// Altitudes below this are treated as unit mistakes (feet passed as metres etc).
  static constexpr double kMinAltitude = -500.0;

  void validate() const;

  /// Air density [kg/m^3]. Throws DomainError below kMinAltitude.
  double density(double h) const;

  /// rho(h) / rho_sl.
  double density_ratio(double h) const;

  /// d ln(rho) / dh [1/m]; constant for this model.
  constexpr double density_log_derivative() const noexcept { return -1.0 / scale_height; }

  /// Indicated (taken as equivalent) airspeed to true airspeed [m/s].
  double kias_to_tas(double v_ias, double h) const;

  double tas_to_kias(double v_tas, double h) const;
};

}  // namespace maxrange
