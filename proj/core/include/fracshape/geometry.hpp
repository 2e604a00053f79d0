#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fracshape/core_math.hpp"
#include "fracshape/vec.hpp"

namespace fracshape {

// Open ball B_R(c) in R^N.
class BallDomain {
 public:
  BallDomain(Vec center, double radius);
  static BallDomain unit(int dim) { return BallDomain(Vec(dim), 1.0); }

  [[nodiscard]] const Vec& center() const noexcept { return center_; }
  [[nodiscard]] double radius() const noexcept { return radius_; }
  [[nodiscard]] int dim() const noexcept { return center_.dim(); }

  /// Surface measure |dB|: 2 for N=1, 2 pi R for N=2, 4 pi R^2 for N=3.
  [[nodiscard]] double surface_measure() const noexcept;
  [[nodiscard]] double volume() const noexcept;
  [[nodiscard]] bool contains(const Vec& y) const noexcept { return signed_distance(y) > 0.0; }
  [[nodiscard]] double signed_distance(const Vec& y) const noexcept;

  friend bool operator==(const BallDomain&, const BallDomain&) = default;

 private:
  Vec center_;
  double radius_;
};

struct Sphere {
  Vec center;
  double radius;
};

/// radius - |y - center|: positive inside, negative outside.
[[nodiscard]] inline double signed_distance(const BallDomain& d, const Vec& y) { return d.signed_distance(y); }

/// (z - center) / radius for z on the sphere (tolerance 1e-8 * radius).
[[nodiscard]] Vec outward_normal(const BallDomain& d, const Vec& z);

// Vector field Y(x) = M x + v. The three kinds only differ in how they were
// specified; `general` wraps an arbitrary C^{1,1} field for kernel evaluators.
class VectorFieldSpec {
 public:
  enum class Kind { constant, linear, affine, general };

  static VectorFieldSpec constant(Vec v);
  static VectorFieldSpec linear(Mat jacobian, Vec offset);
  static VectorFieldSpec affine(double scale, Vec v);  // a x + v
  // Non-affine field; `lipschitz` is the caller's bound on |DY|.
  static VectorFieldSpec general(int dim, std::function<Vec(const Vec&)> value,
                                 std::function<Mat(const Vec&)> jacobian, double lipschitz);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] bool is_affine() const noexcept { return kind_ != Kind::general; }

  [[nodiscard]] Vec operator()(const Vec& x) const;
  [[nodiscard]] Mat jacobian(const Vec& x) const;
  [[nodiscard]] double divergence(const Vec& x) const { return jacobian(x).trace(); }
  // Y(y) - Y(z); exact for affine fields even when y and z nearly coincide.
  [[nodiscard]] Vec difference(const Vec& y, const Vec& z) const;
  [[nodiscard]] double lipschitz() const noexcept { return lipschitz_; }

  // Affine data; meaningful only when is_affine().
  [[nodiscard]] const Mat& matrix() const noexcept { return matrix_; }
  [[nodiscard]] const Vec& offset() const noexcept { return offset_; }

  friend VectorFieldSpec operator+(const VectorFieldSpec& a, const VectorFieldSpec& b);

 private:
  VectorFieldSpec(Kind kind, Mat m, Vec v);

  Kind kind_;
  int dim_;
  Mat matrix_;
  Vec offset_;
  double lipschitz_ = 0.0;
  std::function<Vec(const Vec&)> value_;
  std::function<Mat(const Vec&)> jacobian_;
};

// Phi_t(x) = (1 + t a) x + t v; generator Y(x) = a x + v.
class AffineFlow {
 public:
  AffineFlow(double scale_rate, Vec translation_rate);
  static AffineFlow translation(Vec v) { return AffineFlow(0.0, std::move(v)); }
  static AffineFlow dilation(int dim, double a = 1.0) { return AffineFlow(a, Vec(dim)); }

  [[nodiscard]] double scale_rate() const noexcept { return a_; }
  [[nodiscard]] const Vec& translation_rate() const noexcept { return v_; }
  [[nodiscard]] int dim() const noexcept { return v_.dim(); }

  [[nodiscard]] double scale(double t) const noexcept { return 1.0 + t * a_; }
  [[nodiscard]] Vec apply(const Vec& x, double t) const { return scale(t) * x + t * v_; }
  [[nodiscard]] Vec inverse(const Vec& x, double t) const { return (x - t * v_) / scale(t); }
  [[nodiscard]] double jacobian(double t) const;
  /// |t| below this keeps Phi_t a diffeomorphism: 1/(2|a| + 1).
  [[nodiscard]] double max_step() const noexcept;
  [[nodiscard]] VectorFieldSpec generator() const { return VectorFieldSpec::affine(a_, v_); }

 private:
  double a_;
  Vec v_;
};

// Phi_t(x) = x + t (M x + v); a general linear flow used by the kernel sweeps.
class LinearFlow {
 public:
  LinearFlow(Mat m, Vec v);
  explicit LinearFlow(const AffineFlow& f);

  [[nodiscard]] int dim() const noexcept { return v_.dim(); }
  [[nodiscard]] Mat differential(double t) const { return Mat::identity(dim()) + t * m_; }
  [[nodiscard]] Vec apply(const Vec& x, double t) const { return x + t * (m_ * x + v_); }
  [[nodiscard]] double jacobian(double t) const { return differential(t).determinant(); }
  [[nodiscard]] VectorFieldSpec generator() const { return VectorFieldSpec::linear(m_, v_); }
  [[nodiscard]] const Mat& matrix() const noexcept { return m_; }

 private:
  Mat m_;
  Vec v_;
};

/// Image of the ball under an affine flow: center (1+ta)c + tv, radius (1+ta)R.
[[nodiscard]] BallDomain deform(const BallDomain& d, const AffineFlow& f, double t);

struct BoundaryQuadrature {
  std::vector<Vec> nodes;
  std::vector<Vec> normals;
  std::vector<double> weights;
  int order = 0;

  [[nodiscard]] std::size_t size() const noexcept { return nodes.size(); }
  [[nodiscard]] double total_weight() const noexcept;
};

/// N=1: both endpoints with weight 1; N=2: M-point trapezoid on the circle;
/// N=3: M-point Gauss-Legendre in cos(theta) times 2M-point trapezoid in phi.
[[nodiscard]] BoundaryQuadrature boundary_rule(const BallDomain& d, int order);

// Rule for integrating f(y) g(|y - x|) over the ball when g is singular at
// the interior point x. Nodes are stored as offsets from x so integrands can
// resolve |y - x| to full relative precision.
struct SingularVolumeQuadrature {
  Vec singular_point;
  std::vector<Vec> offsets;
  std::vector<double> weights;
  int angular_nodes = 0;
  int radial_nodes = 0;

  [[nodiscard]] std::size_t size() const noexcept { return offsets.size(); }
  [[nodiscard]] Vec node(std::size_t i) const { return singular_point + offsets[i]; }
  [[nodiscard]] double total_weight() const noexcept;

  // sum_i w_i f(x, offset_i)
  template <class F>
  [[nodiscard]] double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) sum += weights[i] * f(singular_point, offsets[i]);
    return sum;
  }
};

/// Polar rule centred at x: each ray from x to the sphere gets a tanh-sinh
/// rule (resolving the |y-x|^{2s-1} radial weight at the centre and the
/// delta^s behaviour at the boundary); angles use trapezoid (N=2) or
/// Gauss-Legendre x trapezoid (N=3). The angular count grows like
/// sqrt(R/delta(x)) as x approaches the boundary. Rays are split into
/// separate panels where they cross any sphere in `splits` (e.g. the
/// transition shells of a smooth bump in the integrand); for N=2 the circle
/// of directions is also cut where rays graze a split sphere, with
/// tanh-sinh arcs replacing the trapezoid. A positive
/// `angular` fixes the direction count (per polar angle for N=3), so that a
/// family of rules on a moving ball keeps one structure. A nonzero
/// `boundary_exponent` a switches the panel ending on the sphere to
/// Gauss-Jacobi for integrands ~ dist^a there (gradients of G have a = s - 1,
/// where tanh-sinh nodes would sit closer to the sphere than doubles resolve).
[[nodiscard]] SingularVolumeQuadrature volume_rule_singular(const BallDomain& d, const Vec& x, const FracParams& p,
                                                            int order, const std::vector<Sphere>& splits = {},
                                                            int angular = 0, double boundary_exponent = 0.0);

/// Length of the ray from interior point x in unit direction e to the sphere.
[[nodiscard]] double ray_exit_distance(const BallDomain& d, const Vec& x, const Vec& e);

}  // namespace fracshape
