#include "fracshape/fields.hpp"

#include <algorithm>
#include <cmath>

#include "fracshape/errors.hpp"

namespace fracshape {
namespace {

double flat(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

}  // namespace

double bump_profile(double t) {
  const double a = std::fabs(t);
  if (a <= 1.0) return 1.0;
  if (a >= 2.0) return 0.0;
  const double p = flat(2.0 - a);
  return p / (p + flat(a - 1.0));
}

SmoothBump::SmoothBump(Vec center, double width, double amplitude)
    : center_(std::move(center)), width_(width), amplitude_(amplitude) {
  if (!(width > 0.0) || !std::isfinite(width)) throw DomainError("bump width must be positive");
}

double SmoothBump::operator()(const Vec& z) const {
  return amplitude_ * bump_profile((z - center_).norm2() / (width_ * width_));
}

double SmoothBump::support_radius() const noexcept { return std::sqrt(2.0) * width_; }

Field Field::constant(int dim, double value) {
  Field f;
  f.value_ = [value](const Vec&) { return value; };
  f.dim_ = dim;
  f.constant_ = true;
  f.compact_ = true;
  f.support_ = {Vec(dim), 0.0};
  f.far_ = value;
  return f;
}

Field Field::from_bump(const SmoothBump& b) {
  return compact([b](const Vec& z) { return b(z); }, {b.center(), b.support_radius()},
                 {{b.center(), b.width()}, {b.center(), b.support_radius()}}, 0.0, b.width());
}

Field Field::torsion_profile(const BallDomain& d, double s) {
  const Vec c = d.center();
  const double r = d.radius();
  auto value = [c, r, s](const Vec& z) {
    const double q = (z - c).norm();
    const double m = (r - q) * (r + q);
    return m > 0.0 ? std::pow(m, s) : 0.0;
  };
  return compact(value, {c, r}, {{c, r}}, 0.0, r);
}

Field Field::compact(Fn value, Sphere support, std::vector<Sphere> shells, double far_value, double length_scale) {
  if (!(support.radius >= 0.0)) throw DomainError("field support radius must be nonnegative");
  if (!(length_scale > 0.0)) throw DomainError("field length scale must be positive");
  Field f;
  f.value_ = std::move(value);
  f.dim_ = support.center.dim();
  f.compact_ = true;
  f.support_ = std::move(support);
  f.shells_ = std::move(shells);
  f.far_ = far_value;
  f.scale_ = length_scale;
  return f;
}

Field Field::unbounded(int dim, Fn value, double growth, double length_scale) {
  if (!(length_scale > 0.0)) throw DomainError("field length scale must be positive");
  Field f;
  f.value_ = std::move(value);
  f.dim_ = dim;
  f.support_ = {Vec(dim), std::numeric_limits<double>::infinity()};
  f.growth_ = growth;
  f.scale_ = length_scale;
  return f;
}

Field Field::transformed(double lambda, const Vec& shift) const {
  if (!(lambda > 0.0)) throw DomainError("field scaling factor must be positive");
  Field f = *this;
  if (constant_) return f;
  f.value_ = [inner = value_, lambda, shift](const Vec& z) { return inner((z - shift) / lambda); };
  f.support_ = {lambda * support_.center + shift, lambda * support_.radius};
  for (auto& sh : f.shells_) sh = {lambda * sh.center + shift, lambda * sh.radius};
  f.scale_ = lambda * scale_;
  return f;
}

Field combine(double a, const Field& u, double b, const Field& v) {
  if (u.dim() != v.dim()) throw DomainError("combine: dimension mismatch");
  Field f;
  f.value_ = [a, b, fu = u.value_, fv = v.value_](const Vec& z) { return a * fu(z) + b * fv(z); };
  f.dim_ = u.dim();
  f.constant_ = u.constant_ && v.constant_;
  f.compact_ = u.compact_ && v.compact_;
  f.far_ = a * u.far_ + b * v.far_;
  f.growth_ = std::max(u.growth_, v.growth_);
  f.scale_ = std::min(u.constant_ ? v.scale_ : u.scale_, v.constant_ ? u.scale_ : v.scale_);
  f.shells_ = u.shells_;
  f.shells_.insert(f.shells_.end(), v.shells_.begin(), v.shells_.end());
  if (u.constant_) {
    f.support_ = v.support_;
  } else if (v.constant_) {
    f.support_ = u.support_;
  } else {
    const double r = std::max(u.support_.radius, distance(u.support_.center, v.support_.center) + v.support_.radius);
    f.support_ = {u.support_.center, r};
  }
  return f;
}

SourceTerm::SourceTerm(std::string name, Fn value, GradFn gradient, double lipschitz)
    : name_(std::move(name)), value_(std::move(value)), gradient_(std::move(gradient)), lipschitz_(lipschitz) {
  if (!(lipschitz >= 0.0) || !std::isfinite(lipschitz)) throw DomainError("source term needs a finite Lipschitz constant");
}

SourceTerm SourceTerm::constant(double c) {
  SourceTerm h("constant", [c](const Vec&) { return c; }, [](const Vec& y) { return Vec(y.dim()); }, 0.0);
  h.constant_ = true;
  h.constant_value_ = c;
  return h;
}

SourceTerm SourceTerm::affine(double c0, Vec g) {
  const double lip = g.norm();
  return SourceTerm(
      "affine", [c0, g](const Vec& y) { return c0 + dot(g, y); }, [g](const Vec&) { return g; }, lip);
}

SourceTerm SourceTerm::quadratic(double c0, Vec g, double q, double radius) {
  const double lip = g.norm() + 2.0 * std::fabs(q) * radius;
  return SourceTerm(
      "quadratic", [c0, g, q](const Vec& y) { return c0 + dot(g, y) + q * y.norm2(); },
      [g, q](const Vec& y) { return g + 2.0 * q * y; }, lip);
}

}  // namespace fracshape
