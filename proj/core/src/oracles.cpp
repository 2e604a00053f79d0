#include "fracshape/oracles.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "fracshape/errors.hpp"

namespace fracshape {
namespace {

void check_schedule(const ShapeScenario& sc, const FDSchedule& fd, const char* what) {
  if (!(fd.t0 > 0.0) || fd.t0 >= sc.flow.max_step()) {
    std::ostringstream os;
    os << what << ": t0 = " << fd.t0 << " must lie in (0, " << sc.flow.max_step() << ")";
    throw DomainError(os.str());
  }
}

double accept(const FDEstimate& est, const char* what) {
  if (est.converged) return est.value;
  std::ostringstream os;
  os << what << ": Richardson table did not converge; differences";
  for (double d : est.differences) os << ' ' << d;
  os << "; ratios";
  for (double r : est.ratios) os << ' ' << r;
  throw ConvergenceError(os.str());
}

void require_interior(const BallDomain& d, const Vec& x, const char* what) {
  if (x.dim() != d.dim() || !d.contains(x))
    throw DomainError(std::string(what) + ": evaluation point must lie strictly inside the ball");
}

}  // namespace

double oracle_green(const ShapeScenario& sc, const Vec& x, const Vec& y, const FDSchedule& fd) {
  require_interior(sc.domain, x, "oracle_green");
  require_interior(sc.domain, y, "oracle_green");
  if (x == y) throw DomainError("oracle_green requires x != y");
  check_schedule(sc, fd, "oracle_green");
  const AffineFlow& f = sc.flow;
  auto moved = [&](double t) {
    const GreenBall gt(deform(sc.domain, f, t), sc.params);
    return gt.green(f.apply(x, t), f.apply(y, t));
  };
  const double material = accept(richardson_central(moved, fd), "oracle_green");
  const GreenBall g = sc.green();
  const VectorFieldSpec Y = sc.field();
  return material - dot(g.green_grad(x, y, Slot::first), Y(x)) - dot(g.green_grad(x, y, Slot::second), Y(y));
}

double oracle_solution(const ShapeScenario& sc, const SourceTerm& h, const Vec& x, const FDSchedule& fd,
                       const SolveOptions& solve) {
  require_interior(sc.domain, x, "oracle_solution");
  check_schedule(sc, fd, "oracle_solution");
  const AffineFlow& f = sc.flow;
  // x must stay inside every deformed ball the schedule visits.
  for (double t : {fd.t0, -fd.t0})
    if (!deform(sc.domain, f, t).contains(x)) throw DomainError("oracle_solution: x leaves the deformed ball");

  if (h.is_constant()) {
    auto ut = [&](double t) { return h.constant_value() * GreenBall(deform(sc.domain, f, t), sc.params).torsion(x); };
    return accept(richardson_central(ut, fd), "oracle_solution");
  }
  // One rule structure for all t: rays keep their directions and only their
  // lengths move with the ball, so quadrature errors are correlated.
  SolveOptions frozen = solve;
  if (frozen.angular <= 0) {
    const auto base = volume_rule_singular(sc.domain, x, sc.params, solve.order);
    frozen.angular = sc.params.dim() == 3 ? static_cast<int>(std::lround(std::sqrt(base.angular_nodes / 2.0)))
                                          : base.angular_nodes;
  }
  auto ut = [&](double t) { return solve_dirichlet(GreenBall(deform(sc.domain, f, t), sc.params), h, x, frozen); };
  return accept(richardson_central(ut, fd), "oracle_solution");
}

double oracle_robin(const ShapeScenario& sc, const Vec& x, const FDSchedule& fd) {
  require_interior(sc.domain, x, "oracle_robin");
  check_schedule(sc, fd, "oracle_robin");
  const AffineFlow& f = sc.flow;
  auto moved = [&](double t) { return GreenBall(deform(sc.domain, f, t), sc.params).robin(f.apply(x, t)); };
  const double material = accept(richardson_central(moved, fd), "oracle_robin");

  const Vec yx = sc.field()(x);
  const double len = yx.norm();
  if (len == 0.0) return material;
  // grad R . Y(x) = 2 grad_x H(x, x) . Y(x) by the symmetry of H.
  FDSchedule along = fd;
  along.t0 = std::min(fd.t0, 0.25 * sc.domain.signed_distance(x)) / len;
  const GreenBall g = sc.green();
  const double slope = accept(richardson_central([&](double t) { return g.robin(x + t * yx); }, along), "oracle_robin");
  return material - slope;
}

}  // namespace fracshape
