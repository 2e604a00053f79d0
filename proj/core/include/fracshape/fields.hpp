#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fracshape/geometry.hpp"
#include "fracshape/vec.hpp"

namespace fracshape {

/// C^infinity cutoff on the real line: 1 on [-1, 1], 0 outside (-2, 2).
[[nodiscard]] double bump_profile(double t);

// w(z) = amplitude * profile(|z - center|^2 / width^2): equal to the
// amplitude on B(center, width), supported in B(center, sqrt(2) width).
class SmoothBump {
 public:
  SmoothBump(Vec center, double width, double amplitude = 1.0);

  [[nodiscard]] double operator()(const Vec& z) const;
  [[nodiscard]] const Vec& center() const noexcept { return center_; }
  [[nodiscard]] double width() const noexcept { return width_; }
  [[nodiscard]] double amplitude() const noexcept { return amplitude_; }
  [[nodiscard]] double support_radius() const noexcept;
  [[nodiscard]] int dim() const noexcept { return center_.dim(); }

 private:
  Vec center_;
  double width_;
  double amplitude_;
};

// Scalar field handed to the fractional Laplacian. Either compactly
// supported up to a constant (w == far_value outside `support`) or bounded
// with a declared growth exponent at infinity. `shells` lists spheres across
// which w is not analytic; quadrature panels are split there.
class Field {
 public:
  using Fn = std::function<double(const Vec&)>;

  static Field constant(int dim, double value);
  static Field from_bump(const SmoothBump& b);
  /// (R^2 - |z - c|^2)_+^s with a kink on the sphere.
  static Field torsion_profile(const BallDomain& d, double s);
  static Field compact(Fn value, Sphere support, std::vector<Sphere> shells, double far_value, double length_scale);
  /// Field defined on all of R^N with |w(z)| <= C (1+|z|)^growth.
  static Field unbounded(int dim, Fn value, double growth, double length_scale);

  [[nodiscard]] double operator()(const Vec& z) const { return value_(z); }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] bool is_constant() const noexcept { return constant_; }
  [[nodiscard]] bool has_compact_support() const noexcept { return compact_; }
  [[nodiscard]] const Sphere& support() const noexcept { return support_; }
  [[nodiscard]] const std::vector<Sphere>& shells() const noexcept { return shells_; }
  [[nodiscard]] double far_value() const noexcept { return far_; }
  [[nodiscard]] double growth() const noexcept { return growth_; }
  [[nodiscard]] double length_scale() const noexcept { return scale_; }

  /// z -> w((z - shift) / lambda).
  [[nodiscard]] Field transformed(double lambda, const Vec& shift) const;
  /// a u + b v; supports are merged.
  friend Field combine(double a, const Field& u, double b, const Field& v);

 private:
  Field() = default;

  Fn value_;
  int dim_ = 0;
  bool constant_ = false;
  bool compact_ = false;
  Sphere support_{};
  std::vector<Sphere> shells_;
  double far_ = 0.0;
  double growth_ = 0.0;
  double scale_ = 1.0;
};

// Right-hand side h of the Dirichlet problem, Lipschitz on a neighbourhood
// of the domain with a caller-provided constant.
class SourceTerm {
 public:
  using Fn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;

  SourceTerm(std::string name, Fn value, GradFn gradient, double lipschitz);

  static SourceTerm constant(double c);
  /// c0 + g . y
  static SourceTerm affine(double c0, Vec g);
  /// c0 + g . y + q |y|^2; Lipschitz constant quoted on B(0, radius).
  static SourceTerm quadratic(double c0, Vec g, double q, double radius);

  [[nodiscard]] double operator()(const Vec& y) const { return value_(y); }
  [[nodiscard]] Vec gradient(const Vec& y) const { return gradient_(y); }
  [[nodiscard]] double lipschitz() const noexcept { return lipschitz_; }
  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] bool is_constant() const noexcept { return constant_; }
  [[nodiscard]] double constant_value() const noexcept { return constant_value_; }

 private:
  std::string name_;
  Fn value_;
  GradFn gradient_;
  double lipschitz_;
  bool constant_ = false;
  double constant_value_ = 0.0;
};

}  // namespace fracshape
