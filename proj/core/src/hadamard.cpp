#include "fracshape/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "fracshape/errors.hpp"

namespace fracshape {
namespace {

constexpr double kMinDepth = 0.1;  // delta(x) / R accepted at default orders

void require_point(const ShapeScenario& sc, const Vec& x, const char* what) {
  const BallDomain& d = sc.domain;
  if (x.dim() != d.dim()) throw DomainError(std::string(what) + ": dimension mismatch");
  if (!d.contains(x)) throw DomainError(std::string(what) + ": evaluation point must lie strictly inside the ball");
  if (!sc.boundary.adaptive && d.signed_distance(x) < kMinDepth * d.radius()) {
    std::ostringstream os;
    os << what << ": delta(x) = " << d.signed_distance(x) << " is below 0.1 R; enable adaptive boundary order";
    throw DomainError(os.str());
  }
}

// sum_k w_k f(z_k) (Y.nu)(z_k) over the boundary rule of the given order.
double boundary_sum(const ShapeScenario& sc, int order, const std::function<double(const Vec&)>& f) {
  const auto rule = boundary_rule(sc.domain, sc.domain.dim() == 1 ? 2 : order);
  const VectorFieldSpec Y = sc.field();
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double yn = dot(Y(rule.nodes[i]), rule.normals[i]);
    if (yn == 0.0) continue;
    sum += rule.weights[i] * f(rule.nodes[i]) * yn;
  }
  return sum;
}

double adaptive_sum(const ShapeScenario& sc, const std::vector<Vec>& xs, const std::function<double(const Vec&)>& f) {
  int order = effective_boundary_order(sc, xs);
  double value = boundary_sum(sc, order, f);
  if (!sc.boundary.adaptive || sc.domain.dim() == 1) return value;
  while (true) {
    const int next = 2 * order;
    if (next > sc.boundary.max_order) {
      std::ostringstream os;
      os << "adaptive boundary quadrature did not settle below order " << sc.boundary.max_order;
      throw ConvergenceError(os.str());
    }
    const double refined = boundary_sum(sc, next, f);
    const bool settled = std::fabs(refined - value) <= sc.boundary.adaptive_tolerance * std::max(std::fabs(refined), 1e-300);
    value = refined;
    order = next;
    if (settled) return value;
  }
}

}  // namespace

ShapeScenario::ShapeScenario(BallDomain d, AffineFlow f, FracParams p, BoundaryOptions b)
    : domain(std::move(d)), flow(std::move(f)), params(p), boundary(b) {
  if (domain.dim() != params.dim() || flow.dim() != params.dim())
    throw DomainError("ShapeScenario: domain, flow and parameters must share the dimension");
  if (boundary.order < 2 || boundary.max_order < boundary.order) throw DomainError("ShapeScenario: invalid boundary orders");
}

std::string_view to_string(TraceProvenance p) noexcept {
  return p == TraceProvenance::closed_form ? "closed_form" : "trace_numeric";
}

int effective_boundary_order(const ShapeScenario& sc, const std::vector<Vec>& xs) {
  const BallDomain& d = sc.domain;
  if (d.dim() == 1) return 2;
  double rmax = 0.0;
  for (const auto& x : xs) rmax = std::max(rmax, distance(x, d.center()) / d.radius());
  int order = sc.boundary.order;
  if (rmax > 0.0 && rmax < 1.0) {
    const double need = std::log(1e-15) / std::log(rmax);
    order = std::max(order, static_cast<int>(std::ceil(need)));
  }
  return std::min(order, sc.boundary.max_order);
}

SolutionTrace solution_trace(const BallDomain& d, const FracParams& p, const SourceTerm& h, int order,
                             const SolveOptions& solve, const TraceOptions& trace) {
  SolutionTrace out;
  out.rule = boundary_rule(d, d.dim() == 1 ? 2 : order);
  const GreenBall g(d, p);
  if (h.is_constant()) {
    out.provenance = TraceProvenance::closed_form;
    out.values.assign(out.rule.size(), h.constant_value() * g.torsion_trace());
    return out;
  }
  out.provenance = TraceProvenance::numeric;
  auto u = [&](const Vec& y) { return solve_dirichlet(g, h, y, solve); };
  for (const auto& z : out.rule.nodes) out.values.push_back(trace_numeric(u, d, z, p, trace));
  return out;
}

double shape_deriv_green(const ShapeScenario& sc, const Vec& x, const Vec& y) {
  require_point(sc, x, "shape_deriv_green");
  require_point(sc, y, "shape_deriv_green");
  if (x == y) throw DomainError("shape_deriv_green requires x != y");
  const GreenBall g = sc.green();
  const double k = hadamard_const(sc.params.s());
  return k * adaptive_sum(sc, {x, y}, [&](const Vec& z) { return g.trace_green(x, z) * g.trace_green(y, z); });
}

double shape_deriv_solution(const ShapeScenario& sc, const SourceTerm& h, const Vec& x) {
  require_point(sc, x, "shape_deriv_solution");
  if (h.is_constant()) {
    const GreenBall g = sc.green();
    const double tu = h.constant_value() * g.torsion_trace();
    return hadamard_const(sc.params.s()) * adaptive_sum(sc, {x}, [&](const Vec& z) { return g.trace_green(x, z) * tu; });
  }
  return shape_deriv_solution(sc, solution_trace(sc.domain, sc.params, h, effective_boundary_order(sc, {x})), x);
}

double shape_deriv_solution(const ShapeScenario& sc, const SolutionTrace& trace, const Vec& x) {
  require_point(sc, x, "shape_deriv_solution");
  const GreenBall g = sc.green();
  const VectorFieldSpec Y = sc.field();
  double sum = 0.0;
  for (std::size_t i = 0; i < trace.rule.size(); ++i) {
    const Vec& z = trace.rule.nodes[i];
    if (std::fabs(distance(z, sc.domain.center()) - sc.domain.radius()) > 1e-8 * sc.domain.radius())
      throw DomainError("shape_deriv_solution: trace rule does not lie on the scenario's sphere");
    sum += trace.rule.weights[i] * g.trace_green(x, z) * trace.values[i] * dot(Y(z), trace.rule.normals[i]);
  }
  return hadamard_const(sc.params.s()) * sum;
}

double shape_deriv_robin(const ShapeScenario& sc, const Vec& x) {
  require_point(sc, x, "shape_deriv_robin");
  const GreenBall g = sc.green();
  const double k = hadamard_const(sc.params.s());
  return -k * adaptive_sum(sc, {x}, [&](const Vec& z) {
    const double t = g.trace_green(x, z);
    return t * t;
  });
}

}  // namespace fracshape
