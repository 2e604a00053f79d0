#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <gtest/gtest.h>

#include "fracshape/core_math.hpp"
#include "fracshape/errors.hpp"

using namespace fracshape;
constexpr double kPi = std::numbers::pi;

TEST(FracParams, RejectsOutOfRange) {
  EXPECT_THROW(FracParams(0, 0.5), DomainError);
  EXPECT_THROW(FracParams(4, 0.5), DomainError);
  EXPECT_THROW(FracParams(2, 0.0), DomainError);
  EXPECT_THROW(FracParams(2, 1.0), DomainError);
  EXPECT_THROW(FracParams(1, 0.5), DomainError);  // N = 2s
  EXPECT_THROW(FracParams(1, 0.75), DomainError);
  EXPECT_NO_THROW(FracParams(1, 0.45));
}

TEST(Gamma, KnownValues) {
  EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
  EXPECT_DOUBLE_EQ(gamma_fn(2.0), 1.0);
  EXPECT_NEAR(gamma_fn(0.5), 1.7724538509055160273, 1e-15);
}

TEST(Gamma, NonPositiveArgumentThrows) {
  EXPECT_THROW((void)gamma_fn(0.0), DomainError);
  EXPECT_THROW((void)gamma_fn(-1.5), DomainError);
}

TEST(Gamma, MatchesBoostOverRange) {
  for (double x = 0.05; x < 12.0; x += 0.173)
    EXPECT_NEAR(gamma_fn(x) / boost::math::tgamma(x), 1.0, 1e-13) << x;
}

TEST(Constants, FractionalLaplacianNormalisation) {
  EXPECT_NEAR(c_ns(FracParams(2, 0.5)), 1.0 / (2.0 * kPi), 1e-15);
  EXPECT_NEAR(c_ns(FracParams(3, 0.5)), 1.0 / (kPi * kPi), 1e-15);
  // c_{1,s}^{-1} = int_R (1 - cos t) |t|^{-1-2s} dt = -2 Gamma(-2s) cos(pi s).
  for (double s : {0.1, 0.25, 0.4}) {
    const double inv = -2.0 * boost::math::tgamma(-2.0 * s) * std::cos(kPi * s);
    EXPECT_NEAR(c_ns(FracParams(1, s)) * inv, 1.0, 1e-13) << s;
  }
}

TEST(Constants, RieszKernel) {
  EXPECT_NEAR(b_ns(FracParams(3, 0.5)), 1.0 / (2.0 * kPi * kPi), 1e-15);
  EXPECT_NEAR(b_ns(FracParams(2, 0.5)), 1.0 / (2.0 * kPi), 1e-15);
  const double s = 0.25;
  const double ref = boost::math::tgamma(0.5 - s) / (std::pow(4.0, s) * std::sqrt(kPi) * boost::math::tgamma(s));
  EXPECT_NEAR(b_ns(FracParams(1, s)), ref, 1e-14);
}

TEST(Constants, HadamardNormalisation) {
  EXPECT_DOUBLE_EQ(hadamard_const(1.0), 1.0);
  EXPECT_NEAR(hadamard_const(0.5), kPi / 4.0, 1e-15);
  EXPECT_NEAR(hadamard_const(1e-9), 1.0, 1e-8);
  EXPECT_THROW((void)hadamard_const(0.0), DomainError);
  EXPECT_THROW((void)hadamard_const(1.5), DomainError);
}

TEST(Constants, GreenNormalisationRecoversRieszKernel) {
  // kappa * I(inf) = b: the ball Green function tends to the fundamental solution.
  for (int n = 1; n <= 3; ++n)
    for (double s : {0.1, 0.25, 0.45}) {
      const FracParams p(n, s);
      EXPECT_NEAR(kappa_ns(p) * ring_integral(INFINITY, p) / b_ns(p), 1.0, 1e-13);
    }
}

TEST(Constants, TorsionConstant) {
  const double ref = std::pow(4.0, -0.25) * std::sqrt(kPi) / (boost::math::tgamma(0.75) * boost::math::tgamma(1.25));
  EXPECT_NEAR(torsion_const(FracParams(1, 0.25)), ref, 1e-14);
  EXPECT_NEAR(torsion_const(FracParams(1, 0.25)), 1.128, 1e-3);
}

TEST(IncompleteBeta, MatchesBoost) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ab(0.05, 4.0), ux(0.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const double a = ab(rng), b = ab(rng), x = ux(rng);
    const IncBeta r = incomplete_beta(a, b, x, 1.0 - x);
    const double lower = boost::math::beta(a, b, x);
    const double upper = boost::math::betac(a, b, x);
    EXPECT_NEAR(r.lower / lower, 1.0, 1e-12) << a << " " << b << " " << x;
    EXPECT_NEAR(r.upper / upper, 1.0, 1e-11) << a << " " << b << " " << x;
  }
}

TEST(IncompleteBeta, Errors) {
  EXPECT_THROW((void)incomplete_beta(0.0, 1.0, 0.5, 0.5), DomainError);
  EXPECT_THROW((void)incomplete_beta(1.0, 1.0, -0.1, 1.1), DomainError);
}

TEST(RingIntegral, EndpointsAndBetaLimit) {
  EXPECT_EQ(ring_integral(0.0, FracParams(2, 0.5)), 0.0);
  EXPECT_NEAR(ring_integral(INFINITY, FracParams(2, 0.5)), kPi, 1e-14);
  EXPECT_THROW((void)ring_integral(-1e-3, FracParams(2, 0.5)), DomainError);
  EXPECT_THROW((void)ring_tail(-1.0, FracParams(2, 0.5)), DomainError);
}

TEST(RingIntegral, MatchesAdaptiveQuadrature) {
  boost::math::quadrature::tanh_sinh<double> ts;
  for (int n = 1; n <= 3; ++n)
    for (double s : {0.25, 0.45}) {
      const FracParams p(n, s);
      for (double r : {1e-3, 0.3, 1.0, 7.5}) {
        const double ref = ts.integrate([&](double t) { return std::pow(t, s - 1.0) * std::pow(1.0 + t, -0.5 * n); },
                                        0.0, r);
        EXPECT_NEAR(ring_integral(r, p) / ref, 1.0, 1e-12) << n << " " << s << " " << r;
        EXPECT_NEAR(ring_integral(r, p) + ring_tail(r, p), beta_fn(s, p.half_gap()), 1e-13);
      }
    }
}
