#include "maxrange/aero.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "maxrange/error.hpp"
#include "maxrange/oracle.hpp"
#include "maxrange/units.hpp"

namespace maxrange {
namespace {

using units::deg_to_rad;
using units::rad_to_deg;

const DragPolar kPolar{0.024, 0.073};
const Atmosphere kAtm;
constexpr double kGlideDeg = -4.785;

TEST(PressureRatioTest, ZeroSpeed) { EXPECT_EQ(pressure_ratio(kAtm, 0.0, 3048.0, 60000.0, 21.6), 0.0); }

TEST(PressureRatioTest, TenThousandFeet) {
  const double rho = 1.225 * std::exp(-3048.0 / 9042.0);
  const double expected = 0.5 * rho * 138.53 * 138.53 * 21.6 / 60000.0;
  EXPECT_NEAR(pressure_ratio(kAtm, 138.53, 3048.0, 60000.0, 21.6), expected, 1e-12);
  EXPECT_NEAR(pressure_ratio(kAtm, 138.53, 3048.0, 60000.0, 21.6), 3.0208, 2e-4);
}

TEST(PressureRatioTest, QuadraticInSpeed) {
  const double r1 = pressure_ratio(kAtm, 100.0, 2000.0, 50000.0, 21.6);
  EXPECT_NEAR(pressure_ratio(kAtm, 200.0, 2000.0, 50000.0, 21.6), 4.0 * r1, 1e-12);
}

TEST(PressureRatioTest, RejectsBadInputs) {
  EXPECT_THROW(pressure_ratio(kAtm, 100.0, 0.0, 0.0, 21.6), DomainError);
  EXPECT_THROW(pressure_ratio(kAtm, 100.0, 0.0, 1000.0, -1.0), DomainError);
}

TEST(SpeedFromRTest, TenThousandFeet) {
  const double rho = 1.225 * std::exp(-3048.0 / 9042.0);
  EXPECT_NEAR(speed_from_r(kAtm, 3.0208, 3048.0, 60000.0, 21.6), std::sqrt(2 * 3.0208 * 60000.0 / (rho * 21.6)),
              1e-12);
  EXPECT_NEAR(speed_from_r(kAtm, 3.0208, 3048.0, 60000.0, 21.6), 138.53, 5e-3);
}

TEST(SpeedFromRTest, StallFloor) {
  EXPECT_NEAR(speed_from_r(kAtm, 0.8, 0.0, 73000.0, 21.6), std::sqrt(2 * 0.8 * 73000.0 / (1.225 * 21.6)), 1e-12);
  EXPECT_NEAR(speed_from_r(kAtm, 0.8, 0.0, 73000.0, 21.6), 66.4, 0.05);
}

TEST(SpeedFromRTest, RoundTrip) {
  for (double v : {50.0, 120.0, 250.0}) {
    const double r = pressure_ratio(kAtm, v, 4000.0, 55000.0, 21.6);
    EXPECT_NEAR(speed_from_r(kAtm, r, 4000.0, 55000.0, 21.6), v, 1e-12 * v);
  }
}

TEST(StateFromRTest, LevelOptimum) {
  const AeroState st = state_from_r(kPolar, 3.0208, 0.0);
  EXPECT_NEAR(st.cl, 1.0 / 3.0208, 1e-15);
  EXPECT_NEAR(st.cl, 0.33104, 5e-6);
  EXPECT_NEAR(st.drag_over_w, 0.024 * 3.0208 + 0.073 / 3.0208, 1e-15);
  EXPECT_NEAR(st.drag_over_w, 0.096665, 1e-6);
}

TEST(StateFromRTest, UnitLiftCoefficient) { EXPECT_DOUBLE_EQ(state_from_r(kPolar, 1.0, 0.0).cl, 1.0); }

TEST(StateFromRTest, IdentitiesHold) {
  for (double r : {0.9, 2.0, 5.0}) {
    for (double g : {-0.2, 0.0, 0.3}) {
      const AeroState st = state_from_r(kPolar, r, g);
      EXPECT_NEAR(st.cl * st.r, std::cos(g), 1e-12);
      EXPECT_NEAR(st.cd, kPolar.cd0 + kPolar.k * st.cl * st.cl, 1e-12);
      EXPECT_DOUBLE_EQ(st.lift_over_w, std::cos(g));
    }
  }
}

TEST(ThrustRatioTest, LevelOptimum) { EXPECT_NEAR(thrust_ratio(kPolar, 3.0208, 0.0), 0.0967, 5e-5); }

TEST(ThrustRatioTest, MinimumAtMaxLiftDrag) {
  EXPECT_NEAR(thrust_ratio(kPolar, 1.7441, 0.0), 2.0 * std::sqrt(0.073 * 0.024), 1e-8);
  EXPECT_NEAR(thrust_ratio(kPolar, 1.7441, 0.0), 0.08371, 5e-6);
}

TEST(ThrustRatioTest, FiveDegrees) {
  const double g = deg_to_rad(5.0);
  const double expected = 0.024 * 5.3305 + 0.073 * std::cos(g) * std::cos(g) / 5.3305 + std::sin(g);
  EXPECT_NEAR(thrust_ratio(kPolar, 5.3305, g), expected, 1e-15);
  EXPECT_NEAR(thrust_ratio(kPolar, 5.3305, g), 0.22868, 5e-6);
}

TEST(RLdTest, Values) {
  EXPECT_NEAR(r_ld(kPolar, 0.0), 1.74, 0.005);
  EXPECT_NEAR(r_ld(kPolar, 0.0), 1.7441, 1e-4);
  EXPECT_NEAR(r_ld(kPolar, 0.0), oracle::brute_min_r_ld(kPolar, 0.0), 1e-7);
  EXPECT_NEAR(r_ld(kPolar, deg_to_rad(60.0)), 0.87203, 2e-5);
  EXPECT_NEAR(r_ld(kPolar, deg_to_rad(60.0)), 0.5 * r_ld(kPolar, 0.0), 1e-14);
  EXPECT_NEAR(r_ld(kPolar, deg_to_rad(5.0)), r_ld(kPolar, 0.0) * std::cos(deg_to_rad(5.0)), 1e-14);
  EXPECT_NEAR(r_ld(kPolar, deg_to_rad(-4.785)), 1.7380, 5e-5);
}

TEST(MinThrustRatioTest, Values) {
  EXPECT_NEAR(min_thrust_ratio(kPolar, 0.0), 0.0837138, 5e-8);
  EXPECT_NEAR(min_thrust_ratio(kPolar, deg_to_rad(kGlideDeg)), 0.0, 1e-4);
}

TEST(MinThrustRatioTest, BoundsThrustRatio) {
  for (double g : {-0.1, 0.0, 0.1, 0.4}) {
    const double floor = min_thrust_ratio(kPolar, g);
    for (double r = 0.2; r < 20.0; r *= 1.1) EXPECT_GE(thrust_ratio(kPolar, r, g), floor - 1e-15);
    EXPECT_NEAR(thrust_ratio(kPolar, r_ld(kPolar, g), g), floor, 1e-15);
  }
}

TEST(RZeroTest, Values) {
  EXPECT_NEAR(r_zero(kPolar), 3.02, 0.005);
  EXPECT_NEAR(r_zero(kPolar), 3.0208, 5e-5);
  EXPECT_NEAR(r_zero(kPolar) / r_ld(kPolar, 0.0), std::sqrt(3.0), 1e-14);
}

TEST(RZeroTest, SpeedRatio) {
  const double v0 = speed_from_r(kAtm, r_zero(kPolar), 5000.0, 50000.0, 21.6);
  const double vld = speed_from_r(kAtm, r_ld(kPolar, 0.0), 5000.0, 50000.0, 21.6);
  EXPECT_NEAR(v0 / vld, 1.316, 5e-4);
}

TEST(RGammaTest, LevelEqualsRZero) { EXPECT_NEAR(r_gamma(kPolar, 0.0), r_zero(kPolar), 1e-14); }

TEST(RGammaTest, FiveDegreesMatchesOracle) {
  const double oracle_r = oracle::brute_min_r(kPolar, deg_to_rad(5.0));
  EXPECT_NEAR(r_gamma(kPolar, deg_to_rad(5.0)), oracle_r, 1e-6 * oracle_r);
  EXPECT_NEAR(r_gamma(kPolar, deg_to_rad(5.0)), 5.3305, 2e-4);
}

TEST(RGammaTest, GlideMeetsMaxLiftDrag) {
  const double glide = gamma_from_thrust(kPolar, 0.0);
  EXPECT_NEAR(r_gamma(kPolar, glide), r_ld(kPolar, glide), 1e-12);
  EXPECT_NEAR(r_gamma(kPolar, deg_to_rad(kGlideDeg)), 1.7380, 5e-4);
}

TEST(RGammaTest, MatchesOracleOnGrid) {
  for (double d = -10.0; d <= 15.0; d += 2.5) {
    const double ref = oracle::brute_min_r(kPolar, deg_to_rad(d));
    EXPECT_NEAR(r_gamma(kPolar, deg_to_rad(d)), ref, 1e-6 * ref) << d;
  }
}

TEST(RGammaTest, ArgminAtLevelIsRZero) {
  const auto f = [](double r) { return 0.024 * std::sqrt(r) + 0.073 / std::pow(r, 1.5); };
  EXPECT_NEAR(oracle::golden_section(f, 0.5, 10.0, 1e-10), r_zero(kPolar), 1e-7);
}

TEST(TauTest, Values) {
  EXPECT_NEAR(tau(kPolar, 0.0), 0.0967, 5e-5);
  EXPECT_NEAR(tau(kPolar, 0.0), 0.096665, 5e-6);
  EXPECT_NEAR(tau(kPolar, deg_to_rad(kGlideDeg)), 0.0, 1e-4);
  EXPECT_NEAR(tau(kPolar, deg_to_rad(5.0)), thrust_ratio(kPolar, oracle::brute_min_r(kPolar, deg_to_rad(5.0)),
                                                          deg_to_rad(5.0)),
              1e-8);
  EXPECT_NEAR(tau(kPolar, deg_to_rad(5.0)), 0.22868, 5e-6);
}

TEST(TauTest, StrictlyIncreasing) {
  for (double d = kGlideDeg; d < 15.0; d += 0.05) {
    EXPECT_LT(tau(kPolar, deg_to_rad(d)), tau(kPolar, deg_to_rad(d + 0.05)));
  }
}

TEST(GammaFromThrustTest, Values) {
  EXPECT_NEAR(gamma_from_thrust(kPolar, tau(kPolar, 0.0)), 0.0, 1e-14);
  EXPECT_NEAR(gamma_from_thrust(kPolar, 0.096665), 0.0, 1e-4);
  EXPECT_NEAR(rad_to_deg(gamma_from_thrust(kPolar, 0.0)), -4.78, 0.01);
  EXPECT_NEAR(rad_to_deg(gamma_from_thrust(kPolar, 0.0)), kGlideDeg, 5e-4);
  EXPECT_NEAR(rad_to_deg(gamma_from_thrust(kPolar, 0.22868)), 5.0, 1e-3);
}

TEST(GammaFromThrustTest, DomainChecks) {
  EXPECT_THROW(gamma_from_thrust(kPolar, -0.01), DomainError);
  EXPECT_THROW(gamma_from_thrust(kPolar, 1.01), DomainError);
}

TEST(GammaFromThrustTest, RoundTrip) {
  for (double t = 0.0; t <= 1.0; t += 0.01) EXPECT_NEAR(tau(kPolar, gamma_from_thrust(kPolar, t)), t, 1e-10);
}

TEST(GammaFromRTest, Values) {
  EXPECT_NEAR(gamma_from_r(kPolar, r_zero(kPolar)), 0.0, 1e-14);
  EXPECT_NEAR(gamma_from_r(kPolar, 3.0208), 0.0, 1e-5);
  EXPECT_NEAR(rad_to_deg(gamma_from_r(kPolar, 5.3305)), 5.0, 1e-3);
  EXPECT_NEAR(rad_to_deg(gamma_from_r(kPolar, 1.7380)), kGlideDeg, 0.01);
}

TEST(GammaFromRTest, RoundTrip) {
  for (double r = 1.8; r <= 12.0; r += 0.1) EXPECT_NEAR(r_gamma(kPolar, gamma_from_r(kPolar, r)), r, 1e-10);
}

TEST(GammaFromRTest, RejectsNonPositive) { EXPECT_THROW(gamma_from_r(kPolar, 0.0), DomainError); }

TEST(GammaFixedRThrustTest, Values) {
  EXPECT_NEAR(gamma_fixed_r_thrust(kPolar, r_zero(kPolar), tau(kPolar, 0.0)), 0.0, 1e-14);
  const double g = gamma_fixed_r_thrust(kPolar, 3.0208, 0.15);
  EXPECT_NEAR(thrust_ratio(kPolar, 3.0208, g), 0.15, 1e-12);
  EXPECT_NEAR(rad_to_deg(g), 3.0617, 5e-4);
}

TEST(GammaFixedRThrustTest, RandomizedRoundTrip) {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> rd(1.0, 12.0), gd(-0.5, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double r = rd(rng);
    const double t = thrust_ratio(kPolar, r, gd(rng));
    EXPECT_NEAR(thrust_ratio(kPolar, r, gamma_fixed_r_thrust(kPolar, r, t)), t, 1e-10);
  }
}

TEST(GammaFixedRThrustTest, InfeasibleThrust) {
  try {
    gamma_fixed_r_thrust(kPolar, 0.5, 10.0);
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("thrust infeasible at this speed"), std::string::npos);
  }
}

TEST(FixedRInversionsTest, DifferentProblems) {
  // Same family of formulas, different equations: they agree only at level flight.
  const double r = 5.0;
  const double optimal = gamma_from_r(kPolar, r);
  const double at_tau = gamma_fixed_r_thrust(kPolar, r, tau(kPolar, optimal));
  EXPECT_NEAR(at_tau, optimal, 1e-12);
  EXPECT_GT(std::abs(gamma_fixed_r_thrust(kPolar, r, 0.2) - optimal), 1e-3);
}

TEST(StallSpeedTest, Values) {
  EXPECT_NEAR(stall_speed(kAtm, 0.8, 73000.0, 0.0, 21.6), 66.4, 0.05);
  EXPECT_NEAR(stall_speed(kAtm, 0.8, 4.0 * 73000.0, 0.0, 21.6), 2.0 * stall_speed(kAtm, 0.8, 73000.0, 0.0, 21.6),
              1e-10);
  EXPECT_NEAR(stall_speed(kAtm, 0.8, 73000.0, 9042.0, 21.6) / stall_speed(kAtm, 0.8, 73000.0, 0.0, 21.6),
              std::exp(0.5), 1e-12);
}

TEST(DragPolarTest, Validation) {
  EXPECT_NO_THROW(kPolar.validate());
  EXPECT_THROW((DragPolar{0.0, 0.073}).validate(), ConfigError);
  EXPECT_THROW((DragPolar{0.024, -1.0}).validate(), ConfigError);
  EXPECT_THROW((DragPolar{0.1, 1.0}).validate(), ConfigError);
}

}  // namespace
}  // namespace maxrange
