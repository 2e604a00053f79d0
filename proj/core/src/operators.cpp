#include "fracshape/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "fracshape/deformation_kernels.hpp"
#include "fracshape/errors.hpp"
#include "fracshape/quadrature.hpp"

namespace fracshape {
namespace {

constexpr double kPi = std::numbers::pi;

struct Direction {
  Vec e;
  double weight;
};

// One direction per antipodal pair; weights sum to |S^{N-1}| / 2.
std::vector<Direction> half_sphere(int n, int order) {
  std::vector<Direction> out;
  if (n == 1) {
    out.push_back({Vec{1.0}, 1.0});
  } else if (n == 2) {
    for (int k = 0; k < order; ++k) {
      const double th = kPi * k / order;
      out.push_back({Vec{std::cos(th), std::sin(th)}, kPi / order});
    }
  } else {
    const int nphi = 2 * order;
    for (const auto& g : quad::gauss_legendre(order)) {
      const double ct = 0.5 * (g.x + 1.0), st = std::sqrt((1.0 - ct) * (1.0 + ct));
      for (int k = 0; k < nphi; ++k) {
        const double ph = 2.0 * kPi * k / nphi;
        out.push_back({Vec{st * std::cos(ph), st * std::sin(ph), ct}, 0.5 * g.weight * 2.0 * kPi / nphi});
      }
    }
  }
  return out;
}

std::vector<Direction> full_sphere(int n, int order) {
  std::vector<Direction> out;
  if (n == 1) {
    out.push_back({Vec{1.0}, 1.0});
    out.push_back({Vec{-1.0}, 1.0});
  } else if (n == 2) {
    const int m = 2 * order;
    for (int k = 0; k < m; ++k) {
      const double th = 2.0 * kPi * k / m;
      out.push_back({Vec{std::cos(th), std::sin(th)}, 2.0 * kPi / m});
    }
  } else {
    const int nphi = 2 * order;
    for (const auto& g : quad::gauss_legendre(order)) {
      const double ct = g.x, st = std::sqrt((1.0 - ct) * (1.0 + ct));
      for (int k = 0; k < nphi; ++k) {
        const double ph = 2.0 * kPi * k / nphi;
        out.push_back({Vec{st * std::cos(ph), st * std::sin(ph), ct}, g.weight * 2.0 * kPi / nphi});
      }
    }
  }
  return out;
}

// Half circle of line directions for N = 2, split at the directions where a
// line through x grazes one of `spheres`. The ray integral is not analytic
// in the angle there, so those arcs get tanh-sinh panels instead of the
// periodic trapezoid.
std::vector<Direction> half_circle_split(const std::vector<Sphere>& spheres, const Vec& x, int order) {
  std::vector<double> cuts;
  for (const auto& sp : spheres) {
    const Vec w = sp.center - x;
    const double d = w.norm();
    if (!(d > sp.radius * (1.0 + 1e-12))) continue;
    const double phi = std::atan2(w[1], w[0]), alpha = std::asin(sp.radius / d);
    for (double a : {phi - alpha, phi + alpha}) cuts.push_back(a - kPi * std::floor(a / kPi));
  }
  if (cuts.empty()) return half_sphere(2, order);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> edges{cuts.front()};
  for (double c : cuts)
    if (c > edges.back() + 1e-12) edges.push_back(c);
  edges.push_back(edges.front() + kPi);
  const auto nodes = quad::tanh_sinh(std::max(16, order / 2), 1e-16);
  std::vector<Direction> out;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k], len = edges[k + 1] - a;
    if (!(len > 1e-12)) continue;
    for (const auto& nd : nodes) {
      const double th = a + len * nd.from_left;
      out.push_back({Vec{std::cos(th), std::sin(th)}, len * nd.weight});
    }
  }
  return out;
}

// Signed parameters rho at which x + rho e meets the sphere.
void line_crossings(const Sphere& sp, const Vec& x, const Vec& e, std::vector<double>& out) {
  const Vec w = x - sp.center;
  const double wn = w.norm();
  const double b = dot(w, e);
  const double c = (wn - sp.radius) * (wn + sp.radius);
  const double disc = b * b - c;
  if (disc < 0.0) return;
  const double q = -(b + std::copysign(std::sqrt(disc), b));
  if (q == 0.0) {
    out.push_back(0.0);
    return;
  }
  out.push_back(q);
  out.push_back(c / q);
}

// Sorted cut points strictly inside (lo, hi), near-duplicates merged.
std::vector<double> panel_edges(std::vector<double> cuts, double lo, double hi) {
  std::vector<double> edges{lo};
  std::sort(cuts.begin(), cuts.end());
  const double tiny = 1e-13 * (hi - lo);
  for (double c : cuts)
    if (c > edges.back() + tiny && c < hi - tiny) edges.push_back(c);
  edges.push_back(hi);
  return edges;
}

// f receives (x, x - a, b - x) on each panel [a, b].
template <class F>
double integrate_panels(const std::vector<double>& edges, const std::vector<quad::EndpointNode>& nodes, F&& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    const double a = edges[k], b = edges[k + 1], len = b - a;
    double part = 0.0;
    for (const auto& nd : nodes) {
      const double dl = len * nd.from_left, dr = len * nd.from_right;
      part += nd.weight * f(a + dl, dl, dr, a, b);
    }
    sum += len * part;
  }
  return sum;
}

double ray_part(const Field& w, const Vec& x, const Vec& e, double wx, double near_radius, const FracParams& p,
                const FracLaplacianOptions& o, const std::vector<quad::EndpointNode>& nodes) {
  const double s = p.s();
  std::vector<double> signed_cuts;
  for (const auto& sh : w.shells()) line_crossings(sh, x, e, signed_cuts);
  std::vector<double> cuts;
  for (double c : signed_cuts) cuts.push_back(std::fabs(c));

  double outer = 0.0;
  if (w.has_compact_support()) {
    std::vector<double> sc;
    line_crossings(w.support(), x, e, sc);
    for (double c : sc) {
      cuts.push_back(std::fabs(c));
      outer = std::max(outer, std::fabs(c));
    }
  } else {
    outer = w.length_scale();
    for (double c : cuts) outer = std::max(outer, c);
  }
  if (!(outer > 0.0)) return 0.0;

  // Innermost piece: second difference replaced by its quadratic model
  // g(rho) ~ g(rc) (rho / rc)^2, which avoids cancellation in 2w(x) - w(x+z) - w(x-z).
  const double rn = std::min(near_radius, 0.5 * outer);
  const double rc = o.taylor_fraction * rn;
  auto g = [&](double rho) { return 2.0 * wx - w(x + rho * e) - w(x - rho * e); };
  double total = g(rc) * std::pow(rc, -2.0 * s) / (2.0 - 2.0 * s);

  cuts.push_back(rn);
  const auto edges = panel_edges(cuts, rc, outer);
  total += integrate_panels(edges, nodes, [&](double rho, double, double, double, double) {
    return g(rho) * std::pow(rho, -1.0 - 2.0 * s);
  });

  if (w.has_compact_support()) {
    total += 2.0 * (wx - w.far_value()) * std::pow(outer, -2.0 * s) / (2.0 * s);
  } else {
    total += quad::integrate_to_infinity([&](double rho) { return g(rho) * std::pow(rho, -1.0 - 2.0 * s); }, outer,
                                         outer, 2 * o.radial_order);
  }
  return total;
}

double exterior_value(const Field& w, const Vec& x, const FracParams& p, const FracLaplacianOptions& o,
                      const std::vector<quad::EndpointNode>& nodes) {
  const Sphere& sp = w.support();
  const int n = p.dim();
  const double exponent = -0.5 * (n + 2.0 * p.s());
  std::vector<double> radii;
  for (const auto& sh : w.shells())
    if (distance(sh.center, sp.center) <= 1e-12 * sp.radius) radii.push_back(sh.radius);
  const auto edges = panel_edges(radii, 0.0, sp.radius);
  double total = 0.0;
  for (const auto& dir : full_sphere(n, o.angular_order)) {
    total += dir.weight * integrate_panels(edges, nodes, [&](double r, double, double, double, double) {
      const Vec y = sp.center + r * dir.e;
      double jac = 1.0;
      for (int k = 1; k < n; ++k) jac *= r;
      return (w(y) - w.far_value()) * jac * std::pow((x - y).norm2(), exponent);
    });
  }
  return -c_ns(p) * total;
}

double distance_to_shells(const Field& w, const Vec& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& sh : w.shells()) d = std::min(d, std::fabs(distance(x, sh.center) - sh.radius));
  if (w.has_compact_support()) d = std::min(d, std::fabs(distance(x, w.support().center) - w.support().radius));
  return d;
}

}  // namespace

double frac_laplacian_pv(const Field& w, const Vec& x, const FracParams& p, const FracLaplacianOptions& o) {
  if (w.dim() != p.dim() || x.dim() != p.dim()) throw DomainError("frac_laplacian_pv: dimension mismatch");
  if (o.radial_order < 4 || o.angular_order < 2 || !(o.taylor_fraction > 0.0 && o.taylor_fraction < 1.0) ||
      !(o.exterior_switch >= 1.0))
    throw DomainError("frac_laplacian_pv: invalid options");
  if (w.is_constant()) return 0.0;
  if (!w.has_compact_support() && !(w.growth() < 2.0 * p.s())) {
    std::ostringstream os;
    os << "frac_laplacian_pv: declared growth " << w.growth() << " makes the tail non-integrable (need < 2s = "
       << 2.0 * p.s() << ")";
    throw DomainError(os.str());
  }
  const auto nodes = quad::tanh_sinh(o.radial_order);
  // Rays resolve the near-singular kernel just outside the support; far away
  // they would mostly miss it, so the support-centred rule takes over.
  if (w.has_compact_support() && distance(x, w.support().center) > o.exterior_switch * w.support().radius)
    return exterior_value(w, x, p, o, nodes);

  const double gap = distance_to_shells(w, x);
  double near_radius = std::min(1.0, 0.5 * gap);
  if (!(near_radius > 0.0)) near_radius = w.length_scale();
  const double wx = w(x);
  double total = 0.0;
  std::vector<Sphere> spheres = w.shells();
  if (w.has_compact_support()) spheres.push_back(w.support());
  const auto dirs =
      p.dim() == 2 ? half_circle_split(spheres, x, o.angular_order) : half_sphere(p.dim(), o.angular_order);
  for (const auto& dir : dirs) total += dir.weight * ray_part(w, x, dir.e, wx, near_radius, p, o, nodes);
  return c_ns(p) * total;
}

// --- Dirichlet problem -----------------------------------------------------

double solve_dirichlet(const GreenBall& g, const SourceTerm& h, const Vec& x, const SolveOptions& opts) {
  const BallDomain& d = g.domain();
  if (!d.contains(x)) throw DomainError("solve_dirichlet requires x strictly inside the ball");
  auto potential = [&](int order) {
    const auto rule = volume_rule_singular(d, x, g.params(), order, {}, opts.angular);
    return rule.integrate([&](const Vec& xx, const Vec& off) { return g.green_offset(xx, off) * h(xx + off); });
  };
  const double u = potential(opts.order);
  if (opts.verify) {
    const double coarse = potential(std::max(4, opts.order / 2));
    if (!std::isfinite(u) || std::fabs(u - coarse) > opts.tolerance * std::max(std::fabs(u), 1e-300)) {
      std::ostringstream os;
      os << "solve_dirichlet: orders " << opts.order / 2 << " and " << opts.order << " give " << coarse << " and " << u;
      throw ConvergenceError(os.str());
    }
  }
  return u;
}

double solve_dirichlet(const BallDomain& d, const SourceTerm& h, const Vec& x, const FracParams& p,
                       const SolveOptions& opts) {
  return solve_dirichlet(GreenBall(d, p), h, x, opts);
}

// --- Green representation --------------------------------------------------

namespace {

// Barycentric interpolation on Chebyshev points of the second kind, panel by panel.
class RadialTable {
 public:
  RadialTable(const std::function<double(double)>& f, std::vector<double> edges, int points)
      : edges_(std::move(edges)), points_(points) {
    for (std::size_t k = 0; k + 1 < edges_.size(); ++k) {
      const double a = edges_[k], b = edges_[k + 1];
      for (int j = 0; j <= points_; ++j) {
        const double xj = 0.5 * (a + b) + 0.5 * (b - a) * std::cos(kPi * j / points_);
        nodes_.push_back(xj);
        values_.push_back(f(xj));
      }
    }
  }

  double operator()(double r) const {
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), r);
    std::size_t k = it == edges_.begin() ? 0 : static_cast<std::size_t>(it - edges_.begin()) - 1;
    k = std::min(k, edges_.size() - 2);
    const std::size_t base = k * (points_ + 1);
    double num = 0.0, den = 0.0;
    for (int j = 0; j <= points_; ++j) {
      const double diff = r - nodes_[base + j];
      if (diff == 0.0) return values_[base + j];
      double w = (j % 2 == 0 ? 1.0 : -1.0) / diff;
      if (j == 0 || j == points_) w *= 0.5;
      num += w * values_[base + j];
      den += w;
    }
    return num / den;
  }

 private:
  std::vector<double> edges_;
  int points_;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

}  // namespace

double representation_check(const BallDomain& d, const SmoothBump& psi, const Vec& x, const FracParams& p,
                            const RepresentationOptions& opts) {
  if (psi.dim() != d.dim()) throw DomainError("representation_check: dimension mismatch");
  if (!(distance(psi.center(), d.center()) + psi.support_radius() < d.radius()))
    throw DomainError("representation_check: bump support must lie strictly inside the ball");
  if (!d.contains(x)) throw DomainError("representation_check requires x strictly inside the ball");
  const GreenBall g(d, p);
  const Field f = Field::from_bump(psi);
  const double sig = psi.width();
  const Vec& c = psi.center();

  // (-Delta)^s psi is radial about the bump centre. Tabulating it once lets
  // the volume rule run at high angular order, which the steep transition
  // layer of the bump needs.
  std::vector<double> edges{0.0};
  for (double t : {1.0, 1.25, 1.5, 1.75, 2.0}) edges.push_back(sig * std::sqrt(t));
  const double rmax = distance(c, d.center()) + d.radius();
  for (double k = 1.1; edges.back() < rmax; k *= 1.25) edges.push_back(std::sqrt(2.0) * sig * k);
  const Vec axis = Vec::unit(d.dim(), 0);
  const RadialTable lap([&](double r) { return frac_laplacian_pv(f, c + r * axis, p, opts.laplacian); }, edges,
                        opts.table_points);

  std::vector<Sphere> shells;
  for (std::size_t k = 1; k + 1 < edges.size(); ++k) shells.push_back({c, edges[k]});
  const auto rule = volume_rule_singular(d, x, p, opts.order, shells);
  const double integral = rule.integrate([&](const Vec& xx, const Vec& off) {
    return g.green_offset(xx, off) * lap(distance(xx + off, c));
  });
  return std::fabs(psi(x) - integral);
}

// --- duality -------------------------------------------------------------

namespace {

// Surface rule on the sphere of d clustered towards the direction of x - c,
// where trace_green(x, .) peaks.
BoundaryQuadrature peaked_boundary_rule(const BallDomain& d, const Vec& x, int order) {
  const int n = d.dim();
  if (n == 1) return boundary_rule(d, 2);
  BoundaryQuadrature q;
  q.order = order;
  const double r = d.radius();
  const Vec xc = x - d.center();
  const auto ts = quad::tanh_sinh(std::max(8, order / 2));
  auto push = [&](const Vec& normal, double w) {
    q.nodes.push_back(d.center() + r * normal);
    q.normals.push_back(normal);
    q.weights.push_back(w);
  };
  if (n == 2) {
    const double phi0 = xc.norm() > 0.0 ? std::atan2(xc[1], xc[0]) : 0.0;
    for (int half = 0; half < 2; ++half)
      for (const auto& nd : ts) {
        const double phi = phi0 + kPi * (half + nd.from_left);
        push(Vec{std::cos(phi), std::sin(phi)}, kPi * r * nd.weight);
      }
    return q;
  }
  // N = 3: polar axis along x - c, tanh-sinh in the polar angle.
  Vec axis = xc.norm() > 0.0 ? xc / xc.norm() : Vec{0.0, 0.0, 1.0};
  Vec e1 = std::fabs(axis[0]) < 0.9 ? Vec{1.0, 0.0, 0.0} : Vec{0.0, 1.0, 0.0};
  e1 = e1 - dot(e1, axis) * axis;
  e1 = e1 / e1.norm();
  const Vec e2{axis[1] * e1[2] - axis[2] * e1[1], axis[2] * e1[0] - axis[0] * e1[2], axis[0] * e1[1] - axis[1] * e1[0]};
  const int nphi = 2 * order;
  for (const auto& nd : ts) {
    const double al = kPi * nd.from_left;
    const double sa = std::sin(al), ca = std::cos(al);
    for (int k = 0; k < nphi; ++k) {
      const double ph = 2.0 * kPi * k / nphi;
      const Vec nu = ca * axis + sa * (std::cos(ph) * e1 + std::sin(ph) * e2);
      push(nu, kPi * nd.weight * sa * (2.0 * kPi / nphi) * r * r);
    }
  }
  return q;
}

}  // namespace

IdentityPair duality_lemma_ab(const BallDomain& d, const std::function<double(const Vec&)>& f, const SourceTerm& h,
                              const FracParams& p, const DualityOptions& opts) {
  if (d.dim() != p.dim()) throw DomainError("duality_lemma_ab: dimension mismatch");
  const GreenBall g(d, p);
  IdentityPair out;

  // lhs: the sphere integral of f against trace_green(x, .) is smooth inside
  // and grows like delta(x)^{s-1}, so the centred polar rule gets a weighted
  // boundary panel.
  const auto vol = volume_rule_singular(d, d.center(), p, opts.volume_order, {}, 0, p.s() - 1.0);
  out.lhs = vol.integrate([&](const Vec& c, const Vec& off) {
    const Vec xx = c + off;
    // For N >= 2 a stored point this close to the sphere cannot resolve
    // |x - z| near the peak; the dropped shell carries mass O((1e-13)^s).
    if (!d.contains(xx) || (d.dim() > 1 && d.signed_distance(xx) < 1e-13 * d.radius())) return 0.0;
    const auto bq = peaked_boundary_rule(d, xx, opts.boundary_order);
    double phi = 0.0;
    for (std::size_t i = 0; i < bq.size(); ++i) phi += bq.weights[i] * g.trace_green(xx, bq.nodes[i]) * f(bq.nodes[i]);
    return phi * h(xx);
  });

  const auto bq = boundary_rule(d, opts.boundary_order);
  auto u = [&](const Vec& y) { return solve_dirichlet(g, h, y, opts.solve); };
  for (std::size_t i = 0; i < bq.size(); ++i) {
    const double fz = f(bq.nodes[i]);
    if (fz == 0.0) continue;
    out.rhs += bq.weights[i] * fz * trace_numeric(u, d, bq.nodes[i], p, opts.trace);
  }
  return out;
}

// --- gradient identity -----------------------------------------------------

IdentityPair gradient_identity_check(const BallDomain& d, const SourceTerm& h, const VectorFieldSpec& Y,
                                     const Vec& x, const FracParams& p, const GradientIdentityOptions& opts) {
  if (!Y.is_affine()) throw DomainError("gradient_identity_check requires an affine vector field");
  if (!d.contains(x)) throw DomainError("gradient_identity_check requires x strictly inside the ball");
  const GreenBall g(d, p);
  const int n = p.dim();
  const double s = p.s();
  const double b = b_ns(p);
  const Vec yx = Y(x);
  const double divY = Y.matrix().trace();
  IdentityPair out;

  // grad_y G . Y(y) + grad_x G . Y(x) = grad_y F . (Y(y) - Y(x)) - grad_y H . Y(y) - grad_x H . Y(x),
  // so the |y-x|^{2s-N-1} singularity of grad F is tamed by the exact difference Y(y) - Y(x).
  const auto rule = volume_rule_singular(d, x, p, opts.order, {}, 0, s - 1.0);
  out.lhs = rule.integrate([&](const Vec& xx, const Vec& off) {
    const Vec y = xx + off;
    if (!d.contains(y)) return 0.0;
    const double rho2 = off.norm2();
    const double div_hy = dot(h.gradient(y), Y(y)) + h(y) * divY;
    const double gval = g.green_offset(xx, off);
    const Vec fy = b * (2.0 * s - n) * std::pow(rho2, s - 0.5 * n - 1.0) * off;
    const auto [hx, hy] = g.regular_part_grad_offset(xx, off);
    const double kernel = dot(fy, Y.difference(y, xx)) - dot(hy, Y(y)) - dot(hx, yx);
    return gval * div_hy + kernel * h(y);
  });

  const double ylen = yx.norm();
  if (ylen == 0.0) return out;
  FDSchedule fd = opts.fd;
  fd.t0 = opts.step_fraction * d.signed_distance(x) / ylen;
  const auto est = richardson_central([&](double t) { return solve_dirichlet(g, h, x + t * yx, opts.solve); }, fd);
  if (!est.converged) {
    std::ostringstream os;
    os << "gradient_identity_check: finite differences did not converge, ratios";
    for (double r : est.ratios) os << ' ' << r;
    throw ConvergenceError(os.str());
  }
  out.rhs = est.value;
  return out;
}

// --- Appendix C identity -----------------------------------------------------

namespace {

double appendix_c_rhs(const Vec& x, const VectorFieldSpec& Y, const SmoothBump& w, const FracParams& p,
                      const AppendixCOptions& o) {
  const int n = p.dim();
  const double s = p.s();
  const Mat dy = Y.jacobian(x);
  const Field f = Field::from_bump(w);
  const auto nodes = quad::tanh_sinh(o.order);
  auto lap = [&](const Vec& z) { return frac_laplacian_pv(f, z, p, o.laplacian); };
  // In polar coordinates about 0: [DY z].z |z|^{2s-N-2} dz = (theta^T DY theta) r^{2s-1} dr dtheta.
  double total = 0.0;
  const auto dirs = n == 1 ? full_sphere(1, 1) : full_sphere(n, o.angular_order);
  for (const auto& dir : dirs) {
    const double quadform = dot(dy * dir.e, dir.e);
    if (quadform == 0.0) continue;
    std::vector<double> cuts;
    const Sphere shells[] = {{w.center(), w.width()}, {w.center(), w.support_radius()}};
    double far = 0.0;
    for (const auto& sh : shells) {
      std::vector<double> c;
      line_crossings(sh, Vec(n), dir.e, c);
      for (double v : c)
        if (v > 0.0) {
          cuts.push_back(v);
          far = std::max(far, v);
        }
    }
    far = std::max(far, w.support_radius());
    const auto edges = panel_edges(cuts, 0.0, far);
    double radial = integrate_panels(edges, nodes, [&](double r, double dl, double, double a, double) {
      const double rr = a == 0.0 ? dl : r;
      return std::pow(rr, 2.0 * s - 1.0) * lap(rr * dir.e);
    });
    radial += quad::integrate_to_infinity([&](double r) { return std::pow(r, 2.0 * s - 1.0) * lap(r * dir.e); }, far,
                                          far, o.order);
    total += dir.weight * quadform * radial;
  }
  return -(n - 2.0 * s) * total;
}

// N = 1: I = iint (w(y)-w(z))(a(y)-a(z)) |y-z|^{-1-2s} dy dz with a = |.|^{2s-1}
// written as 2 int_0^inf h^{-1-2s} J(h) dh, J(h) = int (w(y)-w(y+h))(a(y)-a(y+h)) dy.
double pair_energy_1d(const SmoothBump& w, double s, int order) {
  const double x0 = w.center()[0], sig = w.width(), big = w.support_radius();
  const std::vector<double> wb{x0 - big, x0 - sig, x0 + sig, x0 + big};
  std::vector<double> base = wb;
  base.push_back(0.0);
  std::sort(base.begin(), base.end());
  const auto nodes = quad::tanh_sinh(order);
  const double ex = 2.0 * s - 1.0;

  auto wv = [&](double y) { return w(Vec{y}); };
  auto inner = [&](double h) {
    std::vector<double> cuts{0.0, -h};
    for (double v : wb) {
      cuts.push_back(v);
      cuts.push_back(v - h);
    }
    const auto edges = panel_edges(cuts, x0 - big - h, x0 + big);
    return integrate_panels(edges, nodes, [&](double y, double dl, double dr, double a, double b) {
      const double dw = wv(y) - wv(y + h);
      if (dw == 0.0) return 0.0;
      const double ay = a == 0.0 ? dl : (b == 0.0 ? dr : std::fabs(y));
      const double ayh = a == -h ? dl : (b == -h ? dr : std::fabs(y + h));
      if (ay == 0.0 || ayh == 0.0) return 0.0;  // measure-zero node after merging near-equal cuts
      return dw * (std::pow(ay, ex) - std::pow(ayh, ex));
    });
  };

  std::vector<double> hcuts;
  for (double u : base)
    for (double v : base)
      if (v > u) hcuts.push_back(v - u);
  const double hmax = base.back() - base.front();
  const auto edges = panel_edges(hcuts, 0.0, hmax);
  // J(h) = O(h^{1+2s}), so the h^{-1-2s} weight leaves a bounded integrand
  // and nodes closer than 1e-14 to a difference breakpoint carry nothing.
  const auto hnodes = quad::tanh_sinh(order, 1e-14);
  double total = integrate_panels(edges, hnodes, [&](double hh, double dl, double, double a, double) {
    const double h = a == 0.0 ? dl : hh;
    return std::pow(h, -1.0 - 2.0 * s) * inner(h);
  });
  total += quad::integrate_to_infinity([&](double h) { return std::pow(h, -1.0 - 2.0 * s) * inner(h); }, hmax, hmax,
                                       order);
  return 2.0 * total;
}

double radical_inverse(std::uint64_t i, unsigned base) {
  double inv = 1.0 / base, f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

Vec sphere_point(int n, double u1, double u2) {
  if (n == 2) return Vec{std::cos(2.0 * kPi * u1), std::sin(2.0 * kPi * u1)};
  const double ct = 2.0 * u1 - 1.0, st = std::sqrt(std::max(0.0, (1.0 - ct) * (1.0 + ct)));
  return Vec{st * std::cos(2.0 * kPi * u2), st * std::sin(2.0 * kPi * u2), ct};
}

// Randomly shifted Halton estimate of the 2N-dimensional pair integral.
// y is uniform in the bump support S; z = y + rho theta with
// rho = L tan(pi v / 2). Pairs with both points outside S vanish, and pairs
// with exactly one point in S are reached from it, so those carry weight 2.
IdentityPair pair_energy_qmc(const Vec& x, const VectorFieldSpec& Y, const SmoothBump& w, const FracParams& p,
                             const AppendixCOptions& o) {
  const int n = p.dim();
  const double s = p.s();
  const double ell = w.support_radius();
  const Vec& c = w.center();
  const double ball_volume = (n == 2 ? kPi * ell * ell : 4.0 / 3.0 * kPi * ell * ell * ell);
  const double sphere_area = (n == 2 ? 2.0 * kPi : 4.0 * kPi);
  const unsigned primes[] = {2, 3, 5, 7, 11, 13};
  const int dims = 2 * n;
  auto a = [&](const Vec& v) { return std::pow(v.norm2(), s - 0.5 * n); };

  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<double> estimates;
  for (int shift = 0; shift < o.qmc_shifts; ++shift) {
    std::vector<double> rot(dims);
    for (auto& r : rot) r = uni(rng);
    double sum = 0.0;
    for (std::size_t i = 1; i <= o.qmc_points; ++i) {
      double u[6];
      for (int k = 0; k < dims; ++k) {
        const double v = radical_inverse(i, primes[k]) + rot[k];
        u[k] = v - std::floor(v);
      }
      // u[0..n-1]: y in the ball; u[n..2n-1]: direction and radius of z - y.
      const double ry = ell * std::pow(u[0], 1.0 / n);
      const Vec y = c + ry * sphere_point(n, u[1], n == 3 ? u[2] : 0.0);
      const Vec th = sphere_point(n, u[n], n == 3 ? u[n + 1] : 0.0);
      const double v = u[2 * n - 1];
      if (v <= 0.0 || v >= 1.0) continue;
      const double rho = ell * std::tan(0.5 * kPi * v);
      const double drho = ell * 0.5 * kPi / std::pow(std::cos(0.5 * kPi * v), 2);
      if (!(rho > 0.0) || !std::isfinite(drho)) continue;
      const Vec z = y + rho * th;
      const double dw = w(y) - w(z);
      if (dw == 0.0) continue;
      const double mult = distance(z, c) < ell ? 1.0 : 2.0;
      const double om = omega_Y_frozen(Y, x, y, z, p);
      const double kern = std::pow(rho, -n - 2.0 * s) * std::pow(rho, n - 1.0) * drho;
      sum += mult * dw * (a(y) - a(z)) * kern * om;
    }
    estimates.push_back(ball_volume * sphere_area * sum / static_cast<double>(o.qmc_points));
  }
  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= estimates.size();
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  const double k = static_cast<double>(estimates.size());
  IdentityPair out;
  out.lhs = mean;
  out.lhs_std_error = k > 1 ? std::sqrt(var / (k - 1.0) / k) : 0.0;
  return out;
}

}  // namespace

IdentityPair appendix_c_identity(const Vec& x, const VectorFieldSpec& Y, const SmoothBump& w, const FracParams& p,
                                 const AppendixCOptions& opts) {
  if (w.dim() != p.dim() || x.dim() != p.dim() || Y.dim() != p.dim())
    throw DomainError("appendix_c_identity: dimension mismatch");
  if (p.dim() > 1 && opts.qmc_shifts < 2) throw DomainError("appendix_c_identity needs at least two QMC shifts");
  IdentityPair out;
  const Mat dy = Y.jacobian(x);
  bool zero = true;
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j) zero = zero && dy(i, j) == 0.0;
  if (zero) return out;

  out.rhs = appendix_c_rhs(x, Y, w, p, opts);
  if (p.dim() == 1) {
    const Vec origin{0.0};
    // omega^x_Y is constant in one dimension.
    const double om = omega_Y_frozen(Y, x, origin, Vec{1.0}, p);
    out.lhs = om * pair_energy_1d(w, p.s(), opts.order);
    return out;
  }
  const IdentityPair q = pair_energy_qmc(x, Y, w, p, opts);
  out.lhs = q.lhs;
  out.lhs_std_error = q.lhs_std_error;
  if (out.lhs_std_error > opts.max_relative_std_error * std::fabs(out.lhs)) {
    std::ostringstream os;
    os << "appendix_c_identity: quasi-Monte Carlo standard error " << out.lhs_std_error << " exceeds "
       << opts.max_relative_std_error << " x |estimate " << out.lhs << "|";
    throw ConvergenceError(os.str());
  }
  return out;
}

}  // namespace fracshape
