#include "maxrange/propulsion.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "maxrange/error.hpp"

namespace maxrange {
namespace {

const Atmosphere kAtm;

PropulsionModel unit_power() {
  PropulsionModel p;
  p.power_setting = 1.0;
  return p;
}

TEST(MaxThrustTest, SeaLevelFullPower) { EXPECT_DOUBLE_EQ(max_thrust(unit_power(), kAtm, 0.0), 20000.0); }

TEST(MaxThrustTest, ScaleHeight) {
  PropulsionModel p;
  EXPECT_NEAR(max_thrust(p, kAtm, 9042.0), 20000.0 * 0.98 / std::exp(1.0), 1e-9);
}

TEST(MaxThrustTest, PowerSettingScalesLinearly) {
  for (double h : {0.0, 3000.0, 11000.0}) {
    EXPECT_NEAR(max_thrust(PropulsionModel{}, kAtm, h) / max_thrust(unit_power(), kAtm, h), 0.98, 1e-15);
  }
}

TEST(MaxThrustTest, DecreasesWithAltitude) {
  for (double h = 0.0; h < 14000.0; h += 500.0) {
    EXPECT_GT(max_thrust(PropulsionModel{}, kAtm, h), max_thrust(PropulsionModel{}, kAtm, h + 500.0));
  }
}

TEST(MaxThrustTest, DerivativeMatchesDifference) {
  const PropulsionModel p;
  const double h = 5000.0, d = 0.5;
  const double fd = (max_thrust(p, kAtm, h + d) - max_thrust(p, kAtm, h - d)) / (2 * d);
  EXPECT_NEAR(max_thrust_derivative(p, kAtm, h), fd, 1e-8 * std::abs(fd));
}

TEST(IdleThrustTest, Values) {
  const PropulsionModel p;
  EXPECT_DOUBLE_EQ(idle_thrust(p, kAtm, 0.0), 0.05 * 20000.0);
  for (double h = 0.0; h <= 14000.0; h += 1000.0) {
    EXPECT_LT(idle_thrust(p, kAtm, h), max_thrust(p, kAtm, h));
    EXPECT_NEAR(idle_thrust(p, kAtm, h) / max_thrust(p, kAtm, h), 0.05 / 0.98, 1e-14);
  }
}

TEST(SfcTest, Values) {
  PropulsionModel p;
  EXPECT_DOUBLE_EQ(sfc(p, kAtm, 0.0), 1.9e-4);
  EXPECT_DOUBLE_EQ(sfc(p, kAtm, 12000.0), 1.9e-4);
  p.sfc_exponent = 0.5;
  EXPECT_NEAR(sfc(p, kAtm, 9042.0), 1.9e-4 * std::exp(-0.5), 1e-18);
  EXPECT_DOUBLE_EQ(sfc_log_derivative(p, kAtm), -0.5 / 9042.0);
}

TEST(DesignParameterTest, AltitudeIndependentForTurbojet) {
  const PropulsionModel p;
  const double ref = design_parameter(p, kAtm, 0.0);
  for (double h = 0.0; h <= 14000.0; h += 500.0) EXPECT_NEAR(design_parameter(p, kAtm, h), ref, 1e-10 * ref);
}

TEST(DesignParameterTest, MatchesDefinition) {
  const PropulsionModel p;
  const double h = 4000.0;
  const double t = 0.98 * 20000.0 * std::exp(-h / 9042.0);
  const double dt = -t / 9042.0;
  const double expected = -dt / (std::sqrt(t) * 1.9e-4 * std::sqrt(1.225 * std::exp(-h / 9042.0)));
  EXPECT_NEAR(design_parameter(p, kAtm, h), expected, 1e-12 * expected);
}

TEST(DesignParameterTest, InverseInSfc) {
  PropulsionModel p;
  const double base = design_parameter(p, kAtm, 2000.0);
  p.c_sl *= 2.0;
  EXPECT_NEAR(design_parameter(p, kAtm, 2000.0), 0.5 * base, 1e-14 * base);
}

TEST(DesignParameterTest, DependsOnAltitudeOffTheCancellingFamily) {
  PropulsionModel p;
  p.thrust_exponent = 1.0;
  p.sfc_exponent = 0.5;
  EXPECT_GT(std::abs(design_parameter(p, kAtm, 10000.0) / design_parameter(p, kAtm, 0.0) - 1.0), 0.1);
}

TEST(DesignParameterTest, PowerLawFamilySpread) {
  for (auto [xt, xc] : {std::pair{1.0, 0.0}, std::pair{2.0, 0.5}, std::pair{1.5, 0.25}, std::pair{3.0, 1.0}}) {
    PropulsionModel p;
    p.thrust_exponent = xt;
    p.sfc_exponent = xc;
    double lo = 1e300, hi = 0.0;
    for (double h = 0.0; h <= 14000.0; h += 100.0) {
      lo = std::min(lo, design_parameter(p, kAtm, h));
      hi = std::max(hi, design_parameter(p, kAtm, h));
    }
    EXPECT_LT((hi - lo) / lo, 1e-9) << xt << "," << xc;
  }
}

TEST(PropulsionModelTest, Validation) {
  EXPECT_NO_THROW(PropulsionModel{}.validate());
  PropulsionModel p;
  p.t_max_sl = 0.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.idle_fraction = 1.0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.power_setting = 0.04;
  EXPECT_THROW(p.validate(), ConfigError);
  p = {};
  p.c_sl = -1.0;
  EXPECT_THROW(p.validate(), ConfigError);
}

}  // namespace
}  // namespace maxrange
