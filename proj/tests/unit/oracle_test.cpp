#include "maxrange/oracle.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "maxrange/error.hpp"
#include "maxrange/segments.hpp"
#include "maxrange/units.hpp"

namespace maxrange::oracle {
namespace {

using units::deg_to_rad;

const DragPolar kPolar{0.024, 0.073};

TEST(BruteMinRTest, Examples) {
  EXPECT_NEAR(brute_min_r(kPolar, 0.0), 3.02, 0.005);
  EXPECT_NEAR(brute_min_r(kPolar, 0.0), 3.0208, 5e-5);
  EXPECT_NEAR(brute_min_r(kPolar, deg_to_rad(5.0)), 5.3305, 2e-4);
  EXPECT_NEAR(brute_min_r(kPolar, deg_to_rad(5.0)), r_gamma(kPolar, deg_to_rad(5.0)),
              1e-6 * r_gamma(kPolar, deg_to_rad(5.0)));
  EXPECT_NEAR(brute_min_r(kPolar, deg_to_rad(-4.785)), 1.7380, 5e-5);
}

TEST(BruteMinRTest, LevelMinimizerAnalytic) {
  EXPECT_NEAR(brute_min_r(kPolar, 0.0), std::sqrt(3.0 * 0.073 / 0.024), 1e-7);
}

TEST(BruteMinRTest, BoundaryMinimumIsAnError) {
  EXPECT_THROW(brute_min_r(kPolar, 0.0, {4.0, 50.0, 10000}), DomainError);
  EXPECT_THROW(brute_min_r(kPolar, 0.0, {0.1, 2.0, 10000}), DomainError);
}

TEST(BruteMinRLdTest, Examples) {
  EXPECT_NEAR(brute_min_r_ld(kPolar, 0.0), 1.74, 0.005);
  EXPECT_NEAR(brute_min_r_ld(kPolar, 0.0), 1.7441, 1e-4);
  EXPECT_NEAR(brute_min_r_ld(kPolar, deg_to_rad(60.0)), 0.87203, 2e-5);
}

TEST(BruteMinRLdTest, MatchesAnalyticOnGrid) {
  for (int i = 0; i < 50; ++i) {
    const double g = deg_to_rad(-60.0 + 120.0 * i / 49.0);
    EXPECT_NEAR(brute_min_r_ld(kPolar, g), std::sqrt(0.073 / 0.024) * std::cos(g), 1e-7) << "gamma index " << i;
  }
}

TEST(GoldenSectionTest, Parabola) {
  EXPECT_NEAR(golden_section([](double x) { return (x - 0.3) * (x - 0.3); }, -2.0, 5.0, 1e-10), 0.3, 1e-9);
}

std::vector<double> spaced(double length, double step) {
  std::vector<double> xs;
  const auto n = static_cast<std::size_t>(std::llround(length / step));
  for (std::size_t i = 0; i <= n; ++i) xs.push_back(length * static_cast<double>(i) / static_cast<double>(n));
  return xs;
}

TEST(BruteFuelTest, LevelPlanMatchesClosedForm) {
  const AircraftModel ac = sample_business_jet();
  const double h = 9042.0, w0 = 60000.0, length = 100e3;
  const double r0 = 3.0208;
  const auto xs = spaced(length, 50.0);
  const std::vector<double> hs(xs.size(), h);
  const double fuel = brute_fuel(ac, xs, hs, w0, [&](double) { return r0; });

  const double tau0 = 0.024 * r0 + 0.073 / r0;
  const double dzdx = -ac.sfc(h) * tau0 * std::sqrt(ac.density(h) * ac.wing_area / (2.0 * r0));
  const double z1 = 2.0 * std::sqrt(w0) + dzdx * length;
  EXPECT_NEAR(fuel, w0 - z1 * z1 / 4.0, 1e-6 * (w0 - z1 * z1 / 4.0));
}

TEST(BruteFuelTest, RefinementConverges) {
  const AircraftModel ac = sample_business_jet();
  const double length = 50e3;
  const auto plan = [](double x) { return 3000.0 + 1000.0 * (1.0 - std::cos(std::numbers::pi * x / 50e3)); };
  const auto fuel_at = [&](double step) {
    const auto xs = spaced(length, step);
    std::vector<double> hs;
    for (double x : xs) hs.push_back(plan(x));
    return brute_fuel(ac, xs, hs, 58000.0, [](double) { return 3.0208; });
  };
  const double coarse = fuel_at(50.0), fine = fuel_at(25.0);
  EXPECT_LT(std::abs(coarse - fine), 1e-7 * fine);
}

TEST(BruteFuelTest, RejectsCoarseSampling) {
  const AircraftModel ac = sample_business_jet();
  const std::vector<double> xs{0.0, 100.0, 200.0}, hs{1000.0, 1000.0, 1000.0};
  EXPECT_THROW(brute_fuel(ac, xs, hs, 58000.0, [](double) { return 3.0; }), DomainError);
}

TEST(FiniteDifferenceCheckTest, SineCosine) {
  const auto grid = spaced(1.0, 0.01);
  const auto report = finite_difference_check([](double x) { return std::sin(x); },
                                              [](double x) { return std::cos(x); }, grid, 1e-9);
  EXPECT_TRUE(report.passed);
  EXPECT_LT(report.max_deviation, 1e-9);
}

TEST(FiniteDifferenceCheckTest, WrongDerivativeDetected) {
  const auto grid = spaced(1.0, 0.01);
  const auto report = finite_difference_check([](double x) { return std::sin(x); },
                                              [](double x) { return 2.0 * std::cos(x); }, grid, 1e-9);
  EXPECT_FALSE(report.passed);
  EXPECT_NEAR(report.max_deviation, 1.0, 0.5);
}

TEST(FiniteDifferenceCheckTest, CertifiesContextDerivatives) {
  const ELContext ctx(sample_business_jet());
  std::vector<double> grid;
  for (int i = 0; i <= 80; ++i) grid.push_back(std::tan(deg_to_rad(-15.0 + 40.0 * i / 80.0)));
  const auto d1 = finite_difference_check([&](double p) { return ctx.g(p); }, [&](double p) { return ctx.g1(p); },
                                          grid, 1e-7);
  EXPECT_TRUE(d1.passed) << d1.max_deviation << " at " << d1.worst_x;
  const auto d2 = finite_difference_check([&](double p) { return ctx.g1(p); }, [&](double p) { return ctx.g2(p); },
                                          grid, 1e-7);
  EXPECT_TRUE(d2.passed) << d2.max_deviation << " at " << d2.worst_x;
}

TEST(RichardsonTest, SecondDerivative) {
  EXPECT_NEAR(richardson_second_derivative([](double x) { return std::exp(x); }, 0.5, 1e-2), std::exp(0.5), 1e-9);
}

}  // namespace
}  // namespace maxrange::oracle
