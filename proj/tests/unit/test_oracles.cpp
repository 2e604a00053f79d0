#include <cmath>

#include <gtest/gtest.h>

#include "fracshape/errors.hpp"
#include "fracshape/oracles.hpp"

using namespace fracshape;

TEST(OracleGreen, StableUnderStepHalving) {
  const ShapeScenario sc(BallDomain::unit(1), AffineFlow(0.5, Vec{0.3}), FracParams(1, 0.25));
  const double a = oracle_green(sc, Vec{0.3}, Vec{-0.2}, FDSchedule{1e-2});
  const double b = oracle_green(sc, Vec{0.3}, Vec{-0.2}, FDSchedule{5e-3});
  EXPECT_LT(std::fabs(a - b), 1e-8);
}

TEST(OracleGreen, ScheduleMustStayInsideTheFlowRange) {
  const ShapeScenario sc(BallDomain::unit(1), AffineFlow::dilation(1, 10.0), FracParams(1, 0.25));
  EXPECT_THROW((void)oracle_green(sc, Vec{0.3}, Vec{-0.2}, FDSchedule{0.1}), DomainError);
}

TEST(OracleSolution, OddSourceAtCentreUnderDilation) {
  const ShapeScenario sc(BallDomain::unit(1), AffineFlow::dilation(1), FracParams(1, 0.25));
  EXPECT_NEAR(oracle_solution(sc, SourceTerm::affine(0.0, Vec{1.0}), Vec{0.0}), 0.0, 1e-12);
}

TEST(OracleSolution, PointMustStayInsideDeformedBalls) {
  const ShapeScenario sc(BallDomain::unit(1), AffineFlow::translation(Vec{-1.0}), FracParams(1, 0.25));
  EXPECT_THROW((void)oracle_solution(sc, SourceTerm::constant(1.0), Vec{0.995}, FDSchedule{1e-2}), DomainError);
}

TEST(OracleSolution, UnconvergedScheduleIsReported) {
  const ShapeScenario sc(BallDomain::unit(1), AffineFlow::translation(Vec{1.0}), FracParams(1, 0.25));
  // A demanded ratio spread far below the O(t^2) drift of a coarse schedule.
  FDSchedule fd{0.2, 4};
  fd.ratio_tolerance = 1e-9;
  EXPECT_THROW((void)oracle_solution(sc, SourceTerm::affine(1.0, Vec{0.5}), Vec{0.3}, fd), ConvergenceError);
}

TEST(OracleRobin, CentreUnderTranslation) {
  const ShapeScenario sc(BallDomain::unit(2), AffineFlow::translation(Vec{1.0, 0.0}), FracParams(2, 0.5));
  EXPECT_NEAR(oracle_robin(sc, Vec{0.0, 0.0}), 0.0, 1e-9);
}

TEST(OracleRobin, MatchesFormula) {
  const ShapeScenario sc(BallDomain(Vec{0.1}, 1.2), AffineFlow(0.5, Vec{0.3}), FracParams(1, 0.45));
  const Vec x{0.4};
  EXPECT_NEAR(oracle_robin(sc, x) / shape_deriv_robin(sc, x), 1.0, 1e-6);
}
