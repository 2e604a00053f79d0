#include "fracshape/green_ball.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "fracshape/errors.hpp"

namespace fracshape {
namespace {

// Below this value of q = |x-y|^2 / A the regular part uses its power series.
constexpr double kSeriesSwitch = 0.5;

// 1 - |v|^2 written as a product so it keeps relative accuracy near the sphere.
double one_minus_norm2(const Vec& v) {
  const double r = v.norm();
  return (1.0 - r) * (1.0 + r);
}

struct Profile {
  double value;       // J(q)
  double derivative;  // J'(q)
};

// J(q) = sum_k (N/2)_k (-q)^k / (k! (a + k)) and its derivative, |q| < 1.
Profile regular_profile(double q, double half_n, double a) {
  double term = 1.0;   // (N/2)_k (-q)^k / k!
  double dterm = -half_n;  // (N/2)_{j+1} (-1)^{j+1} q^j / j!
  double value = 1.0 / a;
  double deriv = dterm / (a + 1.0);
  for (int k = 0; k < 400; ++k) {
    term *= (half_n + k) * (-q) / (k + 1.0);
    dterm *= (half_n + k + 1.0) * (-q) / (k + 1.0);
    const double tv = term / (a + k + 1.0);
    const double td = dterm / (a + k + 2.0);
    value += tv;
    deriv += td;
    if (std::fabs(tv) <= 1e-17 * std::fabs(value) && std::fabs(td) <= 1e-17 * std::fabs(deriv)) break;
  }
  return {value, deriv};
}

}  // namespace

double fundamental(const Vec& x, const Vec& y, const FracParams& p) {
  const double r = distance(x, y);
  if (r == 0.0) throw SingularityError("fundamental solution evaluated at x == y");
  return b_ns(p) * std::pow(r, 2.0 * p.s() - p.dim());
}

GreenBall::GreenBall(BallDomain domain, FracParams params)
    : domain_(std::move(domain)),
      params_(params),
      b_(b_ns(params)),
      kappa_(kappa_ns(params)),
      beta_(beta_fn(params.s(), params.half_gap())),
      scale_(std::pow(domain_.radius(), 2.0 * params.s() - params.dim())) {
  if (domain_.dim() != params_.dim()) throw DomainError("GreenBall: domain and parameter dimensions differ");
}

GreenBall::Local GreenBall::to_unit(const Vec& x, const Vec& offset) const {
  const double r = domain_.radius();
  Local l;
  l.x = (x - domain_.center()) / r;
  l.d = offset / r;
  l.y = l.x + l.d;
  return l;
}

double GreenBall::green_unit(const Local& l) const {
  const double rho2 = l.d.norm2();
  if (rho2 == 0.0) throw SingularityError("Green function evaluated at x == y");
  const double a1 = one_minus_norm2(l.x);
  const double a2 = one_minus_norm2(l.y);
  if (a1 <= 0.0 || a2 <= 0.0) return 0.0;
  const double s = params_.s();
  const int n = params_.dim();
  const double area = a1 * a2;
  const double q = rho2 / area;
  const double power = std::pow(rho2, s - 0.5 * n);  // |x-y|^{2s-N}
  if (q < kSeriesSwitch) {
    const double a = params_.half_gap();
    const Profile prof = regular_profile(q, 0.5 * n, a);
    return b_ * power - kappa_ * std::pow(area, -a) * prof.value;
  }
  const IncBeta ib = incomplete_beta(s, params_.half_gap(), area / (area + rho2), rho2 / (area + rho2));
  return kappa_ * power * ib.lower;
}

double GreenBall::regular_unit(const Local& l) const {
  const double rho2 = l.d.norm2();
  const double a1 = one_minus_norm2(l.x);
  const double a2 = one_minus_norm2(l.y);
  const double s = params_.s();
  const int n = params_.dim();
  if (a1 <= 0.0 || a2 <= 0.0) {
    if (rho2 == 0.0) throw SingularityError("regular part evaluated at an exterior diagonal point");
    return b_ * std::pow(rho2, s - 0.5 * n);
  }
  const double area = a1 * a2;
  const double q = rho2 / area;
  const double a = params_.half_gap();
  if (q < kSeriesSwitch) return kappa_ * std::pow(area, -a) * regular_profile(q, 0.5 * n, a).value;
  const IncBeta ib = incomplete_beta(s, a, area / (area + rho2), rho2 / (area + rho2));
  return kappa_ * std::pow(rho2, s - 0.5 * n) * ib.upper;
}

std::pair<Vec, Vec> GreenBall::regular_grad_unit(const Local& l) const {
  const int n = params_.dim();
  const double s = params_.s();
  const double a = params_.half_gap();
  const double rho2 = l.d.norm2();
  const double a1 = one_minus_norm2(l.x);
  const double a2 = one_minus_norm2(l.y);
  if (a1 <= 0.0 || a2 <= 0.0) {
    if (rho2 == 0.0) throw SingularityError("regular part gradient at an exterior diagonal point");
    const Vec gy = b_ * (2.0 * s - n) * std::pow(rho2, s - 0.5 * n - 1.0) * l.d;
    return {-gy, gy};
  }
  const double area = a1 * a2;
  const double q = rho2 / area;
  if (q < kSeriesSwitch) {
    const Profile prof = regular_profile(q, 0.5 * n, a);
    const double pw = std::pow(area, -a);
    const Vec dqx = (-2.0 / area) * l.d + (2.0 * q / a1) * l.x;
    const Vec dqy = (2.0 / area) * l.d + (2.0 * q / a2) * l.y;
    const Vec gx = kappa_ * pw * ((2.0 * a / a1 * prof.value) * l.x + prof.derivative * dqx);
    const Vec gy = kappa_ * pw * ((2.0 * a / a2 * prof.value) * l.y + prof.derivative * dqy);
    return {gx, gy};
  }
  const double r0 = area / rho2;
  const IncBeta ib = incomplete_beta(s, a, area / (area + rho2), rho2 / (area + rho2));
  const double tail = ib.upper;
  const double dtail = -std::pow(r0, s - 1.0) * std::pow(1.0 + r0, -0.5 * n);
  const double power = std::pow(rho2, s - 0.5 * n);
  const Vec dr0x = (-2.0 * a2 / rho2) * l.x + (2.0 * r0 / rho2) * l.d;
  const Vec dr0y = (-2.0 * a1 / rho2) * l.y - (2.0 * r0 / rho2) * l.d;
  const double radial = (2.0 * s - n) * power / rho2 * tail;
  const Vec gx = kappa_ * (-radial * l.d + power * dtail * dr0x);
  const Vec gy = kappa_ * (radial * l.d + power * dtail * dr0y);
  return {gx, gy};
}

double GreenBall::green(const Vec& x, const Vec& y) const {
  // Both points mapped independently so that G(x, y) == G(y, x) bit for bit.
  const double r = domain_.radius();
  const Local l{(x - domain_.center()) / r, (y - domain_.center()) / r, (y - x) / r};
  return scale_ * green_unit(l);
}

double GreenBall::green_offset(const Vec& x, const Vec& offset) const {
  return scale_ * green_unit(to_unit(x, offset));
}

Vec GreenBall::green_grad(const Vec& x, const Vec& y, Slot which) const {
  if (!(domain_.contains(x) && domain_.contains(y)))
    throw DomainError("green_grad requires both points strictly inside the ball");
  const Vec d = y - x;
  const double rho2 = d.norm2();
  if (rho2 == 0.0) throw SingularityError("green_grad evaluated at x == y");
  const FracParams& p = params_;
  // grad_y F = b (2s-N) |d|^{2s-N-2} d, grad_x F = -grad_y F.
  const Vec fy = b_ * (2.0 * p.s() - p.dim()) * std::pow(rho2, p.s() - 0.5 * p.dim() - 1.0) * d;
  const auto [hx, hy] = regular_part_grad_offset(x, d);
  return which == Slot::first ? (-fy) - hx : fy - hy;
}

double GreenBall::regular_part(const Vec& x, const Vec& y) const { return regular_part_offset(x, y - x); }

double GreenBall::regular_part_offset(const Vec& x, const Vec& offset) const {
  if (!domain_.contains(x)) throw DomainError("regular_part requires x inside the ball");
  return scale_ * regular_unit(to_unit(x, offset));
}

std::pair<Vec, Vec> GreenBall::regular_part_grad_offset(const Vec& x, const Vec& offset) const {
  auto [gx, gy] = regular_grad_unit(to_unit(x, offset));
  const double k = scale_ / domain_.radius();
  return {k * gx, k * gy};
}

double GreenBall::robin(const Vec& x) const {
  const double delta = domain_.signed_distance(x);
  if (delta < 1e-3 * domain_.radius()) {
    std::ostringstream os;
    os << "Robin function diverges like delta^{2s-N} near the boundary (delta = " << delta << ")";
    throw DivergenceError(os.str());
  }
  const Local l = to_unit(x, Vec(x.dim()));
  const double a1 = one_minus_norm2(l.x);
  return scale_ * kappa_ / params_.half_gap() * std::pow(a1, 2.0 * params_.s() - params_.dim());
}

Vec GreenBall::robin_grad(const Vec& x) const {
  const double value = robin(x);
  const double r = domain_.radius();
  const Vec xh = (x - domain_.center()) / r;
  const double a1 = one_minus_norm2(xh);
  // d/dx (1-|xh|^2)^{2s-N} = (2s-N) (1-|xh|^2)^{2s-N-1} (-2 xh / R)
  return value * (2.0 * params_.s() - params_.dim()) / a1 * (-2.0 / r) * xh;
}

double GreenBall::trace_green(const Vec& x, const Vec& z) const {
  if (!domain_.contains(x)) throw DomainError("trace_green requires x strictly inside the ball");
  const double r = domain_.radius();
  const Vec zz = z - domain_.center();
  if (std::fabs(zz.norm() - r) > 1e-8 * r) throw DomainError("trace_green requires z on the sphere");
  const double s = params_.s();
  const int n = params_.dim();
  const Vec xh = (x - domain_.center()) / r;
  const double dist = distance(xh, zz / r);
  const double unit = std::pow(2.0, s) * kappa_ / s * std::pow(one_minus_norm2(xh), s) * std::pow(dist, -n);
  return std::pow(r, s - n) * unit;
}

double GreenBall::torsion(const Vec& x) const {
  const double r = domain_.radius();
  const double a1 = one_minus_norm2((x - domain_.center()) / r);
  if (a1 <= 0.0) return 0.0;
  return torsion_const(params_) * std::pow(r, 2.0 * params_.s()) * std::pow(a1, params_.s());
}

Vec GreenBall::torsion_grad(const Vec& x) const {
  const double r = domain_.radius();
  const Vec xh = (x - domain_.center()) / r;
  const double a1 = one_minus_norm2(xh);
  if (a1 <= 0.0) return Vec(x.dim());
  const double s = params_.s();
  const double k = torsion_const(params_) * std::pow(r, 2.0 * s) * s * std::pow(a1, s - 1.0) * (-2.0 / r);
  return k * xh;
}

double GreenBall::torsion_trace() const {
  const double s = params_.s();
  return torsion_const(params_) * std::pow(domain_.radius(), s) * std::pow(2.0, s);
}

double trace_numeric(const std::function<double(const Vec&)>& u, const BallDomain& d, const Vec& z,
                     const FracParams& p, const TraceOptions& opts) {
  const Vec nu = outward_normal(d, z);
  const double eps0 = opts.eps0 > 0.0 ? opts.eps0 : 1e-2 * d.radius();
  const int levels = opts.levels;
  if (levels < 2) throw DomainError("trace_numeric needs at least two levels");
  // Richardson table for an expansion in integer powers of eps.
  std::vector<std::vector<double>> table(levels);
  for (int k = 0; k < levels; ++k) {
    const double eps = eps0 / std::pow(2.0, k);
    table[k].push_back(u(z - eps * nu) / std::pow(eps, p.s()));
    for (int j = 1; j <= k; ++j) {
      const double f = std::pow(2.0, j);
      table[k].push_back((f * table[k][j - 1] - table[k - 1][j - 1]) / (f - 1.0));
    }
  }
  const double result = table[levels - 1][levels - 1];
  const double spread = std::fabs(table[levels - 1][levels - 2] - table[levels - 2][levels - 2]);
  if (!std::isfinite(result) || spread > opts.oscillation_tolerance * std::fabs(result)) {
    std::ostringstream os;
    os << "trace extrapolation did not settle: estimates " << table[levels - 2][levels - 2] << " and "
       << table[levels - 1][levels - 2] << " (spread " << spread << ")";
    throw ConvergenceError(os.str());
  }
  return result;
}

}  // namespace fracshape
