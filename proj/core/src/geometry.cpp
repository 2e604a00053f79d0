#include "fracshape/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracshape/errors.hpp"
#include "fracshape/quadrature.hpp"

namespace fracshape {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTolerance = 1e-8;

void require_same_dim(int a, int b, const char* what) {
  if (a != b) throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

BallDomain::BallDomain(Vec center, double radius) : center_(std::move(center)), radius_(radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball radius must be positive and finite");
  if (center_.dim() < 1 || center_.dim() > kMaxDim) throw DomainError("ball dimension must be 1, 2 or 3");
}

double BallDomain::surface_measure() const noexcept {
  switch (dim()) {
    case 1: return 2.0;
    case 2: return 2.0 * kPi * radius_;
    default: return 4.0 * kPi * radius_ * radius_;
  }
}

double BallDomain::volume() const noexcept {
  switch (dim()) {
    case 1: return 2.0 * radius_;
    case 2: return kPi * radius_ * radius_;
    default: return 4.0 / 3.0 * kPi * radius_ * radius_ * radius_;
  }
}

double BallDomain::signed_distance(const Vec& y) const noexcept { return radius_ - distance(y, center_); }

Vec outward_normal(const BallDomain& d, const Vec& z) {
  require_same_dim(d.dim(), z.dim(), "outward_normal");
  const Vec w = z - d.center();
  if (std::fabs(w.norm() - d.radius()) > kBoundaryTolerance * d.radius())
    throw DomainError("outward_normal: point is not on the sphere");
  return w / d.radius();
}

// --- VectorFieldSpec -------------------------------------------------------

VectorFieldSpec::VectorFieldSpec(Kind kind, Mat m, Vec v)
    : kind_(kind), dim_(v.dim()), matrix_(m), offset_(std::move(v)), lipschitz_(m.max_singular_value()) {}

VectorFieldSpec VectorFieldSpec::constant(Vec v) {
  const int n = v.dim();
  return VectorFieldSpec(Kind::constant, Mat(n), std::move(v));
}

VectorFieldSpec VectorFieldSpec::linear(Mat jacobian, Vec offset) {
  require_same_dim(jacobian.dim(), offset.dim(), "VectorFieldSpec::linear");
  return VectorFieldSpec(Kind::linear, jacobian, std::move(offset));
}

VectorFieldSpec VectorFieldSpec::affine(double scale, Vec v) {
  const int n = v.dim();
  return VectorFieldSpec(Kind::affine, Mat::scalar(n, scale), std::move(v));
}

VectorFieldSpec VectorFieldSpec::general(int dim, std::function<Vec(const Vec&)> value,
                                         std::function<Mat(const Vec&)> jacobian, double lipschitz) {
  VectorFieldSpec y(Kind::general, Mat(dim), Vec(dim));
  y.value_ = std::move(value);
  y.jacobian_ = std::move(jacobian);
  y.lipschitz_ = lipschitz;
  return y;
}

Vec VectorFieldSpec::operator()(const Vec& x) const {
  if (kind_ == Kind::general) return value_(x);
  return matrix_ * x + offset_;
}

Mat VectorFieldSpec::jacobian(const Vec& x) const {
  if (kind_ == Kind::general) return jacobian_(x);
  return matrix_;
}

Vec VectorFieldSpec::difference(const Vec& y, const Vec& z) const {
  if (kind_ == Kind::general) return value_(y) - value_(z);
  return matrix_ * (y - z);
}

VectorFieldSpec operator+(const VectorFieldSpec& a, const VectorFieldSpec& b) {
  require_same_dim(a.dim(), b.dim(), "VectorFieldSpec sum");
  if (a.is_affine() && b.is_affine()) return VectorFieldSpec::linear(a.matrix_ + b.matrix_, a.offset_ + b.offset_);
  return VectorFieldSpec::general(
      a.dim(), [a, b](const Vec& x) { return a(x) + b(x); },
      [a, b](const Vec& x) { return a.jacobian(x) + b.jacobian(x); }, a.lipschitz() + b.lipschitz());
}

// --- flows -----------------------------------------------------------------

AffineFlow::AffineFlow(double scale_rate, Vec translation_rate) : a_(scale_rate), v_(std::move(translation_rate)) {
  if (v_.dim() < 1 || v_.dim() > kMaxDim) throw DomainError("flow dimension must be 1, 2 or 3");
  if (!std::isfinite(a_)) throw DomainError("flow scale rate must be finite");
}

double AffineFlow::jacobian(double t) const { return std::pow(scale(t), dim()); }

double AffineFlow::max_step() const noexcept { return 1.0 / (2.0 * std::fabs(a_) + 1.0); }

LinearFlow::LinearFlow(Mat m, Vec v) : m_(m), v_(std::move(v)) { require_same_dim(m_.dim(), v_.dim(), "LinearFlow"); }

LinearFlow::LinearFlow(const AffineFlow& f) : m_(Mat::scalar(f.dim(), f.scale_rate())), v_(f.translation_rate()) {}

BallDomain deform(const BallDomain& d, const AffineFlow& f, double t) {
  require_same_dim(d.dim(), f.dim(), "deform");
  const double k = f.scale(t);
  if (!(k > 0.0)) throw DomainError("deform: degenerate scale 1 + t a <= 0");
  if (t == 0.0) return d;
  return BallDomain(f.apply(d.center(), t), k * d.radius());
}

// --- quadrature ------------------------------------------------------------

double BoundaryQuadrature::total_weight() const noexcept {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

double SingularVolumeQuadrature::total_weight() const noexcept {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

BoundaryQuadrature boundary_rule(const BallDomain& d, int order) {
  if (order < 2) throw DomainError("boundary_rule needs order >= 2");
  BoundaryQuadrature q;
  q.order = order;
  const int n = d.dim();
  const double r = d.radius();
  auto push = [&](const Vec& normal, double w) {
    q.nodes.push_back(d.center() + r * normal);
    q.normals.push_back(normal);
    q.weights.push_back(w);
  };
  if (n == 1) {
    push(Vec{-1.0}, 1.0);
    push(Vec{1.0}, 1.0);
  } else if (n == 2) {
    const double w = 2.0 * kPi * r / order;
    for (int k = 0; k < order; ++k) {
      const double th = 2.0 * kPi * k / order;
      push(Vec{std::cos(th), std::sin(th)}, w);
    }
  } else if (n == 3) {
    const auto gl = quad::gauss_legendre(order);
    const int nphi = 2 * order;
    for (const auto& g : gl) {
      const double ct = g.x, st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int k = 0; k < nphi; ++k) {
        const double ph = 2.0 * kPi * k / nphi;
        push(Vec{st * std::cos(ph), st * std::sin(ph), ct}, g.weight * (2.0 * kPi / nphi) * r * r);
      }
    }
  } else {
    throw DomainError("boundary_rule: unsupported dimension");
  }
  return q;
}

double ray_exit_distance(const BallDomain& d, const Vec& x, const Vec& e) {
  const Vec w = x - d.center();
  const double wn = w.norm();
  const double c = (d.radius() - wn) * (d.radius() + wn);
  const double b = dot(w, e);
  const double disc = std::sqrt(b * b + c);
  return b <= 0.0 ? disc - b : c / (b + disc);
}

SingularVolumeQuadrature volume_rule_singular(const BallDomain& d, const Vec& x, const FracParams& p, int order,
                                              const std::vector<Sphere>& splits, int angular_count,
                                              double boundary_exponent) {
  require_same_dim(d.dim(), x.dim(), "volume_rule_singular");
  require_same_dim(d.dim(), p.dim(), "volume_rule_singular");
  if (order < 4) throw DomainError("volume_rule_singular needs order >= 4");
  const double delta = d.signed_distance(x);
  if (!(delta > 0.0)) throw DomainError("volume_rule_singular: singular point must lie strictly inside the ball");

  const int n = d.dim();
  // Keep the truncated mass near x (~ gap^{2s}) below 1e-17 while staying
  // clear of overflow in |y-x|^{2s-N}.
  const double min_gap = std::clamp(std::pow(1e-17, 1.0 / (2.0 * p.s())), 1e-90, 1e-12);
  const auto radial = quad::tanh_sinh(order, min_gap);

  SingularVolumeQuadrature rule;
  rule.singular_point = x;
  rule.radial_nodes = static_cast<int>(radial.size());

  const auto inner = quad::tanh_sinh(order);
  const bool jacobi = boundary_exponent != 0.0;
  if (jacobi && !(boundary_exponent > -1.0)) throw DomainError("volume_rule_singular: boundary exponent must exceed -1");
  const auto outer = jacobi ? quad::gauss_jacobi(order, boundary_exponent) : inner;
  std::vector<double> edges;
  auto add_ray = [&](const Vec& e, double angular_weight) {
    const double len = ray_exit_distance(d, x, e);
    edges.assign({0.0});
    for (const auto& sp : splits) {
      const Vec w = x - sp.center;
      const double wn = w.norm();
      const double b = dot(w, e);
      const double disc = b * b - (wn - sp.radius) * (wn + sp.radius);
      if (disc <= 0.0) continue;
      const double r = std::sqrt(disc);
      for (double c : {-b - r, -b + r})
        if (c > 1e-12 * len && c < len * (1.0 - 1e-12)) edges.push_back(c);
    }
    std::sort(edges.begin(), edges.end());
    // The weighted boundary panel must not also contain x.
    if (jacobi && edges.size() == 1) edges.push_back(0.5 * len);
    edges.push_back(len);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
      const double a = edges[k], plen = edges[k + 1] - a;
      if (!(plen > 0.0)) continue;
      const bool last = k + 2 == edges.size();
      // Only the panel starting at x needs the deep endpoint clustering.
      for (const auto& node : (k == 0 ? radial : last ? outer : inner)) {
        const double rho = a + plen * node.from_left;
        double w = angular_weight * plen * node.weight;
        if (last && jacobi) w /= std::pow(node.from_right, boundary_exponent);
        for (int j = 1; j < n; ++j) w *= rho;
        rule.offsets.push_back(rho * e);
        rule.weights.push_back(w);
      }
    }
  };

  // Trapezoid error decays like exp(-n * width) with the analyticity strip
  // width ~ sqrt(2 delta / R) of the ray-length function.
  const double width = std::sqrt(2.0 * delta / d.radius());
  const int angular =
      angular_count > 0 ? angular_count : std::max(2 * order, static_cast<int>(std::ceil(32.0 / width)));

  if (n == 1) {
    rule.angular_nodes = 2;
    add_ray(Vec{-1.0}, 1.0);
    add_ray(Vec{1.0}, 1.0);
  } else if (n == 2) {
    // Rays grazing a split sphere that does not contain x make the ray
    // integral non-analytic in the angle; panel the circle at those angles.
    std::vector<double> cuts;
    for (const auto& sp : splits) {
      const Vec w = sp.center - x;
      const double dc = w.norm();
      if (!(dc > sp.radius * (1.0 + 1e-12))) continue;
      const double phi = std::atan2(w[1], w[0]), alpha = std::asin(sp.radius / dc);
      for (double a : {phi - alpha, phi + alpha}) cuts.push_back(a - 2.0 * kPi * std::floor(a / (2.0 * kPi)));
    }
    if (!cuts.empty()) {
      std::sort(cuts.begin(), cuts.end());
      std::vector<double> arcs{cuts.front()};
      for (double c : cuts)
        if (c > arcs.back() + 1e-12) arcs.push_back(c);
      arcs.push_back(arcs.front() + 2.0 * kPi);
      const auto nodes = quad::tanh_sinh(std::max(24, angular / 4), 1e-16);
      rule.angular_nodes = 0;
      for (std::size_t k = 0; k + 1 < arcs.size(); ++k) {
        const double a = arcs[k], len = arcs[k + 1] - a;
        if (!(len > 1e-12)) continue;
        for (const auto& nd : nodes) {
          const double th = a + len * nd.from_left;
          add_ray(Vec{std::cos(th), std::sin(th)}, len * nd.weight);
          ++rule.angular_nodes;
        }
      }
      return rule;
    }
    rule.angular_nodes = angular;
    for (int k = 0; k < angular; ++k) {
      const double th = 2.0 * kPi * k / angular;
      add_ray(Vec{std::cos(th), std::sin(th)}, 2.0 * kPi / angular);
    }
  } else {
    const int ntheta = angular_count > 0 ? angular_count : std::max(order, angular / 2);
    const int nphi = 2 * ntheta;
    rule.angular_nodes = ntheta * nphi;
    for (const auto& g : quad::gauss_legendre(ntheta)) {
      const double ct = g.x, st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
      for (int k = 0; k < nphi; ++k) {
        const double ph = 2.0 * kPi * k / nphi;
        add_ray(Vec{st * std::cos(ph), st * std::sin(ph), ct}, g.weight * 2.0 * kPi / nphi);
      }
    }
  }
  return rule;
}

}  // namespace fracshape
