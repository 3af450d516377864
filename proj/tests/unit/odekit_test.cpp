#include "maxrange/odekit.hpp"

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "maxrange/aero.hpp"
#include "maxrange/error.hpp"

namespace maxrange::ode {
namespace {

OdeProblem decay(double rtol) {
  OdeProblem p;
  p.rhs = [](double, std::span<const double> y, std::span<double> dy) { dy[0] = -y[0]; };
  p.initial = {1.0};
  p.x_begin = 0.0;
  p.x_end = 1.0;
  p.rtol = rtol;
  p.atol = 1e-14;
  return p;
}

TEST(IntegrateTest, ConstantPath) {
  OdeProblem p;
  p.rhs = [](double, std::span<const double>, std::span<double> dy) { dy[0] = 0.0; };
  p.initial = {1234.5};
  p.x_end = 1e5;
  const SolutionPath path = integrate(p);
  EXPECT_EQ(path.termination(), Termination::SpanEnd);
  EXPECT_TRUE(path.events().empty());
  for (std::size_t i = 0; i < path.size(); ++i) EXPECT_DOUBLE_EQ(path.state(i)[0], 1234.5);
  EXPECT_DOUBLE_EQ(path.at(4321.0)[0], 1234.5);
}

TEST(IntegrateTest, LinearExact) {
  OdeProblem p;
  const double beta = 0.0137;
  p.rhs = [beta](double, std::span<const double>, std::span<double> dy) { dy[0] = -beta; };
  p.initial = {500.0};
  p.x_end = 2e4;
  const SolutionPath path = integrate(p);
  EXPECT_NEAR(path.final_state()[0], 500.0 - beta * 2e4, 1e-10);
  EXPECT_NEAR(path.at(7777.0)[0], 500.0 - beta * 7777.0, 1e-10);
}

TEST(IntegrateTest, ExponentialDecay) {
  const SolutionPath path = integrate(decay(1e-9));
  EXPECT_NEAR(path.final_state()[0], std::exp(-1.0), 1e-9 * std::exp(-1.0));
}

TEST(IntegrateTest, TighterToleranceNeverWorse) {
  double previous = std::numeric_limits<double>::infinity();
  for (double rtol : {1e-5, 1e-7, 1e-9, 1e-11}) {
    const double err = std::abs(integrate(decay(rtol)).final_state()[0] - std::exp(-1.0));
    EXPECT_LE(err, previous * 1.0000001);
    previous = err;
  }
}

TEST(IntegrateTest, SamplesStrictlyIncreasing) {
  const SolutionPath path = integrate(decay(1e-10));
  for (std::size_t i = 1; i < path.size(); ++i) EXPECT_GT(path.xs()[i], path.xs()[i - 1]);
}

TEST(IntegrateTest, DenseOutputExactAtNodes) {
  const SolutionPath path = integrate(decay(1e-10));
  for (std::size_t i = 0; i < path.size(); ++i) EXPECT_EQ(path.at(path.xs()[i])[0], path.state(i)[0]);
  EXPECT_NEAR(path.at(0.37)[0], std::exp(-0.37), 1e-8);
  EXPECT_THROW(path.at(1.5), DomainError);
}

TEST(IntegrateTest, TerminalEventLocated) {
  OdeProblem p;
  p.rhs = [](double, std::span<const double>, std::span<double> dy) { dy[0] = 1.0; };
  p.initial = {0.0};
  p.x_end = 10.0;
  p.events.push_back({[](double, std::span<const double> y) { return y[0] * y[0] - 2.0; }, Crossing::Rising, 1.0,
                      true});
  const SolutionPath path = integrate(p);
  ASSERT_EQ(path.termination(), Termination::Event);
  EXPECT_LT(std::abs(path.terminal_event()->residual), 1e-10);
  EXPECT_NEAR(path.x_back(), std::sqrt(2.0), 1e-10);
}

TEST(IntegrateTest, CrossingDirectionRespected) {
  OdeProblem p;
  p.rhs = [](double x, std::span<const double>, std::span<double> dy) { dy[0] = std::cos(x); };
  p.initial = {0.0};
  p.x_end = 10.0;
  p.events.push_back({[](double, std::span<const double> y) { return y[0] - 0.5; }, Crossing::Falling, 1.0, true});
  p.events.push_back({[](double, std::span<const double> y) { return y[0] - 0.5; }, Crossing::Rising, 1.0, false});
  const SolutionPath path = integrate(p);
  ASSERT_EQ(path.termination(), Termination::Event);
  EXPECT_LT(std::abs(path.terminal_event()->residual), 1e-10);
  EXPECT_NEAR(path.x_back(), std::numbers::pi - std::asin(0.5), 1e-6);
  ASSERT_EQ(path.events().size(), 1u);
  EXPECT_NEAR(path.events()[0].x, std::asin(0.5), 1e-6);
}

TEST(IntegrateTest, EventLocationStableUnderTolerance) {
  const auto run = [](double rtol) {
    OdeProblem p;
    p.rhs = [](double, std::span<const double> y, std::span<double> dy) {
      dy[0] = y[1];
      dy[1] = -y[0];
    };
    p.initial = {1.0, 0.0};
    p.x_end = 10.0;
    p.rtol = rtol;
    p.events.push_back({[](double, std::span<const double> y) { return y[0]; }, Crossing::Either, 1.0, true});
    return integrate(p).x_back();
  };
  EXPECT_LT(std::abs(run(1e-9) - run(1e-10)), 1e-6 * 10.0);
  EXPECT_NEAR(run(1e-10), std::numbers::pi / 2, 1e-8);
}

TEST(IntegrateTest, NonFiniteRhsThrows) {
  OdeProblem p;
  p.rhs = [](double x, std::span<const double>, std::span<double> dy) {
    dy[0] = x > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 1.0;
  };
  p.initial = {0.0};
  p.x_end = 1.0;
  try {
    integrate(p);
    FAIL() << "expected IntegrationError";
  } catch (const IntegrationError& e) {
    EXPECT_GT(e.last_x(), 0.5);
    EXPECT_LE(e.last_x(), 1.0);
    EXPECT_EQ(e.last_state().size(), 1u);
  }
}

TEST(IntegrateTest, SingularityUnderflows) {
  OdeProblem p;
  p.rhs = [](double x, std::span<const double>, std::span<double> dy) { dy[0] = 1.0 / std::sqrt(1.0 - x); };
  p.initial = {0.0};
  p.x_end = 2.0;
  EXPECT_THROW(integrate(p), IntegrationError);
}

TEST(IntegrateTest, RejectsBadProblems) {
  OdeProblem p = decay(1e-9);
  p.x_end = p.x_begin;
  EXPECT_THROW(integrate(p), DomainError);
  p = decay(0.0);
  EXPECT_THROW(integrate(p), DomainError);
}

TEST(RootFindTest, SquareRootOfTwo) {
  const auto r = root_find([](double x) { return x * x - 2.0; }, 1.0, 2.0);
  EXPECT_NEAR(r.x, 1.41421356, 5e-9);
  EXPECT_NEAR(r.x, std::sqrt(2.0), 1e-15);
}

TEST(RootFindTest, LevelFlightThrust) {
  const DragPolar polar;
  const auto r = root_find([&](double g) { return tau(polar, g) - 0.096665; }, -5.0 * std::numbers::pi / 180.0,
                           10.0 * std::numbers::pi / 180.0);
  EXPECT_NEAR(r.x, gamma_from_thrust(polar, 0.096665), 1e-14);
  EXPECT_NEAR(r.x, 0.0, 1e-4);
}

TEST(RootFindTest, LinearConvergesQuickly) {
  const auto r = root_find([](double x) { return 3.0 * x - 1.0; }, -4.0, 7.0);
  EXPECT_NEAR(r.x, 1.0 / 3.0, 1e-15);
  EXPECT_LE(r.iterations, 2);
}

TEST(RootFindTest, ReportsTrueResidual) {
  const auto f = [](double x) { return std::exp(x) - 5.0; };
  const auto r = root_find(f, 0.0, 3.0, {.f_tol = 1e-6});
  EXPECT_DOUBLE_EQ(r.f, f(r.x));
  EXPECT_LE(std::abs(r.f), 1e-6);
}

TEST(RootFindTest, NoSignChange) {
  EXPECT_THROW(root_find([](double x) { return x * x + 1.0; }, -1.0, 1.0), DomainError);
}

TEST(HermiteTest, ReproducesCubics) {
  const auto f = [](double x) { return 2.0 * x * x * x - x + 3.0; };
  const auto df = [](double x) { return 6.0 * x * x - 1.0; };
  const std::vector<double> y0{f(0.0)}, f0{df(0.0)}, y1{f(2.0)}, f1{df(2.0)};
  EXPECT_NEAR(hermite(0.0, y0, f0, 2.0, y1, f1, 0.7)[0], f(0.7), 1e-13);
}

}  // namespace
}  // namespace maxrange::ode
