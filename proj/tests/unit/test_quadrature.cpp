#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>
#include <gtest/gtest.h>

#include "fracshape/errors.hpp"
#include "fracshape/quadrature.hpp"

using namespace fracshape;

TEST(GaussLegendre, ExactForPolynomials) {
  for (int n : {1, 2, 5, 16, 33}) {
    const auto rule = quad::gauss_legendre(n);
    for (int k = 0; k < 2 * n; ++k) {
      double q = 0.0;
      for (const auto& node : rule) q += node.weight * std::pow(node.x, k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(q, exact, 1e-14) << n << " " << k;
    }
  }
  EXPECT_THROW((void)quad::gauss_legendre(0), DomainError);
}

TEST(TanhSinh, EndpointSingularity) {
  const double q = quad::integrate_tanh_sinh([](double, double dl, double) { return 1.0 / std::sqrt(dl); }, 0.0, 1.0);
  EXPECT_NEAR(q, 2.0, 1e-12);
  // The right-end distance is passed exactly.
  const double r = quad::integrate_tanh_sinh([](double, double, double dr) { return std::pow(dr, -0.75); }, 2.0, 3.0,
                                             80, 1e-200);
  EXPECT_NEAR(r, 4.0, 1e-10);
  EXPECT_THROW((void)quad::tanh_sinh(0), DomainError);
  EXPECT_THROW((void)quad::tanh_sinh(10, 0.7), DomainError);
}

TEST(TanhSinh, NodesCarryComplementaryDistances) {
  for (const auto& node : quad::tanh_sinh(30)) {
    EXPECT_GT(node.from_left, 0.0);
    EXPECT_GT(node.from_right, 0.0);
    EXPECT_NEAR(node.from_left + node.from_right, 1.0, 1e-15);
  }
}

TEST(GaussJacobi, MomentsMatchBetaFunction) {
  for (double a : {-0.75, -0.55, 0.0, 0.8})
    for (int n : {1, 4, 24}) {
      const auto rule = quad::gauss_jacobi(n, a);
      for (int k = 0; k < 2 * n; ++k) {
        double q = 0.0;
        for (const auto& node : rule) q += node.weight * std::pow(node.from_left, k);
        EXPECT_NEAR(q / boost::math::beta(k + 1.0, a + 1.0), 1.0, 1e-12) << a << " " << n << " " << k;
      }
    }
  EXPECT_THROW((void)quad::gauss_jacobi(4, -1.0), DomainError);
}

TEST(IntegrateToInfinity, AlgebraicTail) {
  EXPECT_NEAR(quad::integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0, 1.0), 1.0, 1e-12);
  EXPECT_NEAR(quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, 1.0, 80), 1.0, 1e-10);
}
