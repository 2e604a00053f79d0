#include <benchmark/benchmark.h>

#include "fracshape/green_ball.hpp"
#include "fracshape/hadamard.hpp"
#include "fracshape/operators.hpp"
#include "fracshape/oracles.hpp"

using namespace fracshape;

namespace {

Vec point(int n, double a, double b) {
  Vec x(n);
  x[0] = a;
  if (n > 1) x[1] = b;
  return x;
}

void BM_Green(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const GreenBall g(BallDomain::unit(n), FracParams(n, 0.45));
  const Vec x = point(n, 0.3, 0.1), y = point(n, -0.4, 0.2);
  for (auto _ : st) benchmark::DoNotOptimize(g.green(x, y));
}
BENCHMARK(BM_Green)->Arg(1)->Arg(2)->Arg(3);

void BM_GreenGrad(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const GreenBall g(BallDomain::unit(n), FracParams(n, 0.45));
  const Vec x = point(n, 0.3, 0.1), y = point(n, -0.4, 0.2);
  for (auto _ : st) benchmark::DoNotOptimize(g.green_grad(x, y, Slot::first));
}
BENCHMARK(BM_GreenGrad)->Arg(1)->Arg(2)->Arg(3);

void BM_FracLaplacianBump(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const FracParams p(n, n == 1 ? 0.45 : 0.75);
  const Field w = Field::from_bump(SmoothBump(Vec(n), 0.4));
  const Vec x = point(n, 0.2, 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(frac_laplacian_pv(w, x, p));
}
BENCHMARK(BM_FracLaplacianBump)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_SolveDirichlet(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const GreenBall g(BallDomain::unit(n), FracParams(n, n == 1 ? 0.25 : 0.5));
  const SourceTerm h = SourceTerm::affine(1.0, point(n, 0.5, 0.0));
  const Vec x = point(n, 0.3, 0.1);
  for (auto _ : st) benchmark::DoNotOptimize(solve_dirichlet(g, h, x));
}
BENCHMARK(BM_SolveDirichlet)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_ShapeDerivGreen(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const ShapeScenario sc(BallDomain::unit(n), AffineFlow(0.5, point(n, 0.3, -0.2)), FracParams(n, n == 1 ? 0.25 : 0.75));
  const Vec x = point(n, 0.1, 0.0), y = point(n, 0.5, 0.2);
  for (auto _ : st) benchmark::DoNotOptimize(shape_deriv_green(sc, x, y));
}
BENCHMARK(BM_ShapeDerivGreen)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_OracleGreen(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const ShapeScenario sc(BallDomain::unit(n), AffineFlow(0.5, point(n, 0.3, -0.2)), FracParams(n, n == 1 ? 0.25 : 0.75));
  const Vec x = point(n, 0.1, 0.0), y = point(n, 0.5, 0.2);
  for (auto _ : st) benchmark::DoNotOptimize(oracle_green(sc, x, y));
}
BENCHMARK(BM_OracleGreen)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

void BM_ShapeDerivSolution(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const ShapeScenario sc(BallDomain::unit(n), AffineFlow::dilation(n), FracParams(n, n == 1 ? 0.25 : 0.75));
  const SourceTerm h = SourceTerm::affine(1.0, point(n, 0.5, 0.0));
  const Vec x = point(n, 0.3, 0.2);
  for (auto _ : st) benchmark::DoNotOptimize(shape_deriv_solution(sc, h, x));
}
BENCHMARK(BM_ShapeDerivSolution)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
