#include <cmath>

#include <gtest/gtest.h>

#include "fracshape/errors.hpp"
#include "fracshape/finite_difference.hpp"

using namespace fracshape;

TEST(Richardson, SmoothFunction) {
  const auto est = richardson_central([](double t) { return std::sin(1.0 + t); }, FDSchedule{1e-1, 4});
  EXPECT_TRUE(est.converged);
  EXPECT_NEAR(est.value, std::cos(1.0), 1e-12);
  ASSERT_EQ(est.differences.size(), 4u);
  for (double r : est.ratios) EXPECT_NEAR(r, 4.0, 0.1);
}

TEST(Richardson, PolynomialIsExact) {
  const auto est = richardson_central([](double t) { return 3.0 + 2.0 * t + t * t * t; }, FDSchedule{0.5, 3});
  EXPECT_NEAR(est.value, 2.0, 1e-13);
}

TEST(Richardson, KinkIsNotConverged) {
  const auto est = richardson_central([](double t) { return std::fabs(t - 1e-3) + t; }, FDSchedule{1e-2, 4});
  EXPECT_FALSE(est.converged);
}

TEST(Richardson, InvalidSchedule) {
  const auto f = [](double t) { return t; };
  EXPECT_THROW((void)richardson_central(f, FDSchedule{0.0}), DomainError);
  FDSchedule one{1e-2, 1};
  EXPECT_THROW((void)richardson_central(f, one), DomainError);
}
