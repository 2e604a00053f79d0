#pragma once

#include <string_view>
#include <vector>

#include "fracshape/core_math.hpp"
#include "fracshape/fields.hpp"
#include "fracshape/geometry.hpp"
#include "fracshape/green_ball.hpp"
#include "fracshape/operators.hpp"

namespace fracshape {

struct BoundaryOptions {
  int order = 64;            // minimum boundary order (N >= 2); raised with the peak sharpness
  bool adaptive = false;     // allow delta(x) < 0.1 R by doubling the order until stable
  double adaptive_tolerance = 1e-10;
  int max_order = 8192;
};

// One shape-derivative run: a ball, an affine flow generating Y, and the
// quadrature settings shared by the formulas and the oracles.
struct ShapeScenario {
  ShapeScenario(BallDomain domain, AffineFlow flow, FracParams params, BoundaryOptions boundary = {});

  BallDomain domain;
  AffineFlow flow;
  FracParams params;
  BoundaryOptions boundary;

  [[nodiscard]] VectorFieldSpec field() const { return flow.generator(); }
  [[nodiscard]] GreenBall green() const { return GreenBall(domain, params); }
};

enum class TraceProvenance { closed_form, numeric };
[[nodiscard]] std::string_view to_string(TraceProvenance p) noexcept;

// gamma_0^s(u) on a boundary rule. Computed once per (domain, h) and reused
// for every evaluation point and flow.
struct SolutionTrace {
  TraceProvenance provenance = TraceProvenance::closed_form;
  BoundaryQuadrature rule;
  std::vector<double> values;
};

/// Closed form torsion_trace * h0 for constant h, else trace_numeric of
/// solve_dirichlet at every node of the boundary rule of the given order.
[[nodiscard]] SolutionTrace solution_trace(const BallDomain& d, const FracParams& p, const SourceTerm& h, int order,
                                           const SolveOptions& solve = {}, const TraceOptions& trace = {});

/// Gamma(1+s)^2 int_dOmega gamma(G(x,.)) gamma(G(y,.)) Y.nu. Throws DomainError
/// for x == y or points outside, and for delta < 0.1 R unless adaptive.
[[nodiscard]] double shape_deriv_green(const ShapeScenario& sc, const Vec& x, const Vec& y);

/// Gamma(1+s)^2 int_dOmega gamma(G(x,.)) gamma(u) Y.nu.
[[nodiscard]] double shape_deriv_solution(const ShapeScenario& sc, const SourceTerm& h, const Vec& x);
/// Same with a precomputed trace; its rule must live on sc.domain.
[[nodiscard]] double shape_deriv_solution(const ShapeScenario& sc, const SolutionTrace& trace, const Vec& x);

/// -Gamma(1+s)^2 int_dOmega gamma(G(x,.))^2 Y.nu.
[[nodiscard]] double shape_deriv_robin(const ShapeScenario& sc, const Vec& x);

/// Boundary order used for points xs: the trapezoid error on the circle
/// decays like |x - c|^M / R^M, so M grows until that is below 1e-15.
[[nodiscard]] int effective_boundary_order(const ShapeScenario& sc, const std::vector<Vec>& xs);

}  // namespace fracshape
