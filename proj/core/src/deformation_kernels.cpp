#include "fracshape/deformation_kernels.hpp"

#include <algorithm>
#include <cmath>

#include "fracshape/errors.hpp"

namespace fracshape {
namespace {

double pair_distance2(const Vec& y, const Vec& z) {
  const double r2 = (y - z).norm2();
  if (r2 == 0.0) throw SingularityError("deformation kernel evaluated at y == z");
  return r2;
}

}  // namespace

double omega_Y(const VectorFieldSpec& Y, const Vec& y, const Vec& z, const FracParams& p) {
  const double r2 = pair_distance2(y, z);
  const int n = p.dim();
  const double proj = dot(Y.difference(y, z), y - z) / r2;
  return 0.5 * c_ns(p) * (Y.divergence(y) + Y.divergence(z) - (n + 2.0 * p.s()) * proj);
}

double omega_Y_frozen(const VectorFieldSpec& Y, const Vec& x, const Vec& y, const Vec& z, const FracParams& p) {
  const double r2 = pair_distance2(y, z);
  const Mat dy = Y.jacobian(x);
  const Vec d = y - z;
  return 0.5 * c_ns(p) * (2.0 * dy.trace() - (p.dim() + 2.0 * p.s()) * dot(dy * d, d) / r2);
}

double kappa_Y(const VectorFieldSpec& Y, const Vec& y, const Vec& z, const FracParams& p) {
  const double r2 = pair_distance2(y, z);
  return omega_Y(Y, y, z, p) * std::pow(r2, -0.5 * (p.dim() + 2.0 * p.s()));
}

double kappa_t(const AffineFlow& f, double t, const Vec& y, const Vec& z, const FracParams& p) {
  pair_distance2(y, z);
  const double k = f.scale(t);
  if (!(k > 0.0)) throw DomainError("kappa_t: flow is degenerate at this t");
  // Phi_t(y) - Phi_t(z) = k (y - z) exactly.
  const double jac = f.jacobian(t);
  return 0.5 * c_ns(p) * jac * jac * std::pow(k * (y - z).norm(), -(p.dim() + 2.0 * p.s()));
}

double kappa_t(const LinearFlow& f, double t, const Vec& y, const Vec& z, const FracParams& p) {
  pair_distance2(y, z);
  const double jac = f.jacobian(t);
  if (!(jac > 0.0)) throw DomainError("kappa_t: flow is degenerate at this t");
  const Vec d = f.differential(t) * (y - z);
  return 0.5 * c_ns(p) * jac * jac * std::pow(d.norm2(), -0.5 * (p.dim() + 2.0 * p.s()));
}

double f_x_bound(const Vec& x, const Vec& y, const Vec& z, const FracParams& p, double beta) {
  const double a = distance(x, y);
  const double b = distance(x, z);
  const double c = distance(y, z);
  if (a == 0.0 || b == 0.0 || c == 0.0) throw SingularityError("f_x_bound needs pairwise distinct points");
  const double s = p.s();
  const int n = p.dim();
  if (s == 0.5) {
    if (!(beta > 0.0 && beta < 1.0)) throw DomainError("f_x_bound: beta must lie in (0,1)");
    const double e = 1.0 - n - beta;
    return std::pow(c, beta) * std::max(std::pow(a, e), std::pow(b, e));
  }
  if (2.0 * s < 1.0) return std::max(std::pow(a, 2.0 * s - n), std::pow(b, 2.0 * s - n));
  const double e = 2.0 * s - n - 1.0;
  return c * std::max(std::pow(a, e), std::pow(b, e));
}

}  // namespace fracshape
