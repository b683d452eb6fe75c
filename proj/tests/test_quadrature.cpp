#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nbpk/errors.hpp"
#include "nbpk/quadrature.hpp"

using namespace nbpk;

TEST(Quadrature, Constant) { EXPECT_NEAR(quad_adaptive([](double) { return 1.0; }, 0.0, 1.0), 1.0, 1e-15); }

TEST(Quadrature, ExponentialTail) {
  EXPECT_NEAR(quad_adaptive([](double x) { return std::exp(-x); }, 0.0, INFINITY), 1.0, 1e-10);
  EndpointHints hints;
  hints.tail = TailMap::exponential;
  EXPECT_NEAR(quad_adaptive([](double x) { return std::exp(-x); }, 0.0, INFINITY, {}, hints), 1.0, 1e-10);
}

TEST(Quadrature, StableLaplaceExponentIntegral) {
  EndpointHints hints;
  hints.left_power = 2.0;
  hints.right_power = 2.0;
  const double v = quad_adaptive([](double x) { return x <= 0 ? 0.0 : -std::expm1(-x) * 0.5 * std::pow(x, -1.5); }, 0.0,
                                 INFINITY, QuadratureSpec{1e-12, 1e-10, 500}, hints);
  EXPECT_NEAR(v, std::sqrt(std::numbers::pi), 1e-8);
}

TEST(Quadrature, InverseSquareRootEndpoint) {
  EndpointHints hints;
  hints.left_power = 2.0;
  const QuadResult r =
      quad_adaptive_detailed([](double x) { return x <= 0 ? 0.0 : 1.0 / std::sqrt(x); }, 0.0, 1.0, {}, hints);
  EXPECT_NEAR(r.value, 2.0, 1e-10);
  EXPECT_LE(r.abs_error, 1e-8);
}

TEST(Quadrature, RightEndpointSingularity) {
  EndpointHints hints;
  hints.right_power = 2.0;
  const double v = quad_adaptive([](double x) { return x >= 1 ? 0.0 : 1.0 / std::sqrt(1.0 - x); }, 0.0, 1.0, {}, hints);
  EXPECT_NEAR(v, 2.0, 1e-10);
}

TEST(Quadrature, ReversedAndEmptyRanges) {
  EXPECT_NEAR(quad_adaptive([](double x) { return x; }, 1.0, 0.0), -0.5, 1e-14);
  EXPECT_EQ(quad_adaptive([](double x) { return x; }, 2.0, 2.0), 0.0);
}

TEST(Quadrature, NonFiniteIntegrandThrows) {
  EXPECT_THROW(quad_adaptive([](double) { return NAN; }, 0.0, 1.0), ConvergenceError);
}

TEST(Quadrature, ExhaustionCarriesEstimate) {
  try {
    quad_adaptive([](double x) { return std::sin(1.0 / (x + 1e-6)); }, 0.0, 1.0, QuadratureSpec{1e-15, 1e-15, 5});
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_TRUE(std::isfinite(e.best_estimate()));
    EXPECT_GT(e.error_estimate(), 0.0);
  }
}

TEST(Quadrature, RejectsInvalidSpec) {
  EXPECT_THROW(quad_adaptive([](double) { return 1.0; }, 0.0, 1.0, QuadratureSpec{-1.0, 1e-8, 10}), DomainError);
}
