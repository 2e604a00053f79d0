#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fracshape/errors.hpp"
#include "fracshape/finite_difference.hpp"
#include "fracshape/geometry.hpp"

using namespace fracshape;
constexpr double kPi = std::numbers::pi;

TEST(BallDomain, SignedDistance) {
  const auto d = BallDomain::unit(2);
  EXPECT_DOUBLE_EQ(signed_distance(d, Vec{0.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(signed_distance(d, Vec{0.0, 1.0}), 0.0);
  EXPECT_DOUBLE_EQ(signed_distance(d, Vec{2.0, 0.0}), -1.0);
  EXPECT_FALSE(d.contains(Vec{1.0, 0.0}));
}

TEST(BallDomain, InvalidConstruction) {
  EXPECT_THROW(BallDomain(Vec{0.0}, 0.0), DomainError);
  EXPECT_THROW(BallDomain(Vec{0.0}, -1.0), DomainError);
  EXPECT_THROW(BallDomain(Vec(), 1.0), DomainError);
}

TEST(OutwardNormal, Examples) {
  const auto d = BallDomain::unit(2);
  EXPECT_EQ(outward_normal(d, Vec{1.0, 0.0}), (Vec{1.0, 0.0}));
  EXPECT_EQ(outward_normal(d, Vec{0.0, -1.0}), (Vec{0.0, -1.0}));
  EXPECT_EQ(outward_normal(BallDomain(Vec{1.0, 1.0}, 2.0), Vec{3.0, 1.0}), (Vec{1.0, 0.0}));
  EXPECT_THROW((void)outward_normal(d, Vec{0.5, 0.0}), DomainError);
}

TEST(Deform, TranslationAndDilation) {
  const auto d = BallDomain::unit(2);
  const auto moved = deform(d, AffineFlow::translation(Vec{1.0, 0.0}), 0.1);
  EXPECT_NEAR(moved.center()[0], 0.1, 1e-16);
  EXPECT_DOUBLE_EQ(moved.radius(), 1.0);
  const auto grown = deform(d, AffineFlow::dilation(2), 0.1);
  EXPECT_EQ(grown.center(), Vec(2));
  EXPECT_DOUBLE_EQ(grown.radius(), 1.1);
  const BallDomain b(Vec{0.3, -0.2}, 0.7);
  EXPECT_EQ(deform(b, AffineFlow(0.5, Vec{0.1, 0.2}), 0.0), b);
  EXPECT_THROW((void)deform(d, AffineFlow::dilation(2, -1.0), 1.0), DomainError);
}

TEST(Deform, CenterVelocityIsGenerator) {
  const BallDomain b(Vec{0.3, -0.2, 0.1}, 0.7);
  const AffineFlow f(0.5, Vec{0.1, 0.2, -0.4});
  const Vec y = f.generator()(b.center());
  for (int i = 0; i < 3; ++i) {
    const auto est = richardson_central([&](double t) { return deform(b, f, t).center()[i]; }, FDSchedule{});
    EXPECT_NEAR(est.value, y[i], 1e-12);
  }
}

TEST(AffineFlow, JacobianMatchesFiniteDifferenceDeterminant) {
  const AffineFlow f(0.7, Vec{0.2, -0.1, 0.3});
  const Vec x{0.1, 0.4, -0.2};
  for (double t : {0.1, 0.3, -0.2}) {
    Mat j(3);
    const double h = 1e-4;
    for (int k = 0; k < 3; ++k) {
      const Vec e = Vec::unit(3, k);
      const Vec col = (f.apply(x + h * e, t) - f.apply(x - h * e, t)) / (2.0 * h);
      for (int i = 0; i < 3; ++i) j(i, k) = col[i];
    }
    EXPECT_NEAR(j.determinant() / f.jacobian(t), 1.0, 1e-8);
    EXPECT_NEAR(f.jacobian(t), std::pow(1.0 + 0.7 * t, 3), 1e-15);
  }
}

TEST(VectorField, KindsAndSum) {
  const auto c = VectorFieldSpec::constant(Vec{1.0, 2.0});
  EXPECT_DOUBLE_EQ(c.divergence(Vec{5.0, 5.0}), 0.0);
  const auto a = VectorFieldSpec::affine(2.0, Vec{0.0, 1.0});
  EXPECT_EQ(a(Vec{1.0, 1.0}), (Vec{2.0, 3.0}));
  EXPECT_DOUBLE_EQ(a.divergence(Vec{0.0, 0.0}), 4.0);
  const auto sum = a + c;
  EXPECT_TRUE(sum.is_affine());
  EXPECT_EQ(sum(Vec{1.0, 1.0}), (Vec{3.0, 5.0}));
}

TEST(BoundaryRule, WeightSumsAndSymmetry) {
  EXPECT_NEAR(boundary_rule(BallDomain::unit(2), 64).total_weight(), 2.0 * kPi, 1e-12);
  EXPECT_NEAR(boundary_rule(BallDomain::unit(3), 16).total_weight(), 4.0 * kPi, 1e-10);
  EXPECT_DOUBLE_EQ(boundary_rule(BallDomain::unit(1), 8).total_weight(), 2.0);
  const auto q = boundary_rule(BallDomain::unit(2), 64);
  double nu1 = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) nu1 += q.weights[i] * q.normals[i][0];
  EXPECT_NEAR(nu1, 0.0, 1e-12);
  EXPECT_THROW((void)boundary_rule(BallDomain::unit(2), 1), DomainError);
}

TEST(BoundaryRule, ScaledBallIntegratesQuadratic) {
  // int_{|z-c|=R} z_1^2 dsigma on R^3 = 4 pi R^2 (c_1^2 + R^2 / 3).
  const BallDomain d(Vec{0.5, 0.0, -0.25}, 2.0);
  const auto q = boundary_rule(d, 12);
  double sum = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) sum += q.weights[i] * q.nodes[i][0] * q.nodes[i][0];
  EXPECT_NEAR(sum, 4.0 * kPi * 4.0 * (0.25 + 4.0 / 3.0), 1e-10);
}

TEST(VolumeRule, RadialReferenceIntegrals) {
  const auto one = [](const Vec&, const Vec& off) { return std::pow(off.norm2(), -0.25); };
  EXPECT_NEAR(volume_rule_singular(BallDomain::unit(1), Vec{0.0}, FracParams(1, 0.25), 30).integrate(one), 4.0, 1e-8);
  const auto inv = [](const Vec&, const Vec& off) { return 1.0 / off.norm(); };
  EXPECT_NEAR(volume_rule_singular(BallDomain::unit(2), Vec{0.0, 0.0}, FracParams(2, 0.5), 20).integrate(inv),
              2.0 * kPi, 1e-6);
  const auto zero = [](const Vec&, const Vec&) { return 0.0; };
  EXPECT_EQ(volume_rule_singular(BallDomain::unit(3), Vec(3), FracParams(3, 0.5), 8).integrate(zero), 0.0);
}

TEST(VolumeRule, OffCentreRieszPotential) {
  // int_{B_1} |x - y|^{-1} dy in R^3 equals 2 pi (1 - |x|^2 / 3).
  const Vec x{0.2, -0.3, 0.4};
  const auto rule = volume_rule_singular(BallDomain::unit(3), x, FracParams(3, 0.5), 24);
  const double q = rule.integrate([](const Vec&, const Vec& off) { return 1.0 / off.norm(); });
  EXPECT_NEAR(q / (2.0 * kPi * (1.0 - x.norm2() / 3.0)), 1.0, 1e-6);
  double vol = 0.0;
  for (double w : rule.weights) vol += w;
  EXPECT_NEAR(vol, 4.0 * kPi / 3.0, 1e-8);
}

TEST(VolumeRule, BoundaryWeightedPanel) {
  // int_{-1}^{1} (1 - y^2)^{s-1} dy = B(1/2, s); the weighted panel resolves
  // the endpoint blow-up without nodes at rounding distance from the sphere.
  const double s = 0.25;
  const auto f = [&](const Vec& x, const Vec& off) {
    const double y = x[0] + off[0];
    return std::pow((1.0 - y) * (1.0 + y), s - 1.0);
  };
  const FracParams p(1, s);
  const double exact = std::tgamma(0.5) * std::tgamma(s) / std::tgamma(0.5 + s);
  const auto weighted = volume_rule_singular(BallDomain::unit(1), Vec{0.3}, p, 24, {}, 0, s - 1.0);
  EXPECT_NEAR(weighted.integrate(f) / exact, 1.0, 1e-12);
  EXPECT_THROW((void)volume_rule_singular(BallDomain::unit(1), Vec{0.3}, p, 24, {}, 0, -1.5), DomainError);
}

TEST(VolumeRule, SplitsKeepTheVolume) {
  const std::vector<Sphere> shells{{Vec{0.1, 0.0}, 0.3}, {Vec{0.1, 0.0}, 0.5}};
  const auto rule = volume_rule_singular(BallDomain::unit(2), Vec{0.4, 0.2}, FracParams(2, 0.5), 16, shells);
  double vol = 0.0;
  for (double w : rule.weights) vol += w;
  EXPECT_NEAR(vol, kPi, 1e-9);
}

TEST(VolumeRule, RejectsBoundaryAndOutsidePoints) {
  const auto d = BallDomain::unit(2);
  EXPECT_THROW((void)volume_rule_singular(d, Vec{1.0, 0.0}, FracParams(2, 0.5), 8), DomainError);
  EXPECT_THROW((void)volume_rule_singular(d, Vec{1.5, 0.0}, FracParams(2, 0.5), 8), DomainError);
  EXPECT_THROW((void)volume_rule_singular(d, Vec{0.0, 0.0}, FracParams(2, 0.5), 2), DomainError);
}
