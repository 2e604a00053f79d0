#pragma once

#include <functional>
#include <utility>

#include "fracshape/core_math.hpp"
#include "fracshape/geometry.hpp"
#include "fracshape/vec.hpp"

namespace fracshape {

/// F_s(x, y) = b_{N,s} |x - y|^{2s-N}; throws SingularityError for x == y.
[[nodiscard]] double fundamental(const Vec& x, const Vec& y, const FracParams& p);

enum class Slot { first, second };

// Closed-form Green function of (-Delta)^s on a ball with zero exterior data.
// On the unit ball
//   G(x, y) = kappa_{N,s} |x-y|^{2s-N} I(r0),  r0 = (1-|x|^2)(1-|y|^2)/|x-y|^2,
// with I the ring integral; other balls follow by translation and the
// scaling G_{B_R}(x, y) = R^{2s-N} G_{B_1}(x/R, y/R).
//
// Near the diagonal the regular part H = F - G is evaluated as
//   H = kappa A^{-(N/2-s)} J(|x-y|^2 / A),  A = (1-|x|^2)(1-|y|^2),
// where J(q) = int_0^1 u^{N/2-s-1} (1+qu)^{-N/2} du is analytic at q = 0, so
// neither H nor its gradient suffers cancellation as y -> x.
class GreenBall {
 public:
  GreenBall(BallDomain domain, FracParams params);

  [[nodiscard]] const BallDomain& domain() const noexcept { return domain_; }
  [[nodiscard]] const FracParams& params() const noexcept { return params_; }

  [[nodiscard]] double green(const Vec& x, const Vec& y) const;
  // G(x, x + offset) with |offset| resolved exactly.
  [[nodiscard]] double green_offset(const Vec& x, const Vec& offset) const;

  [[nodiscard]] Vec green_grad(const Vec& x, const Vec& y, Slot which) const;

  /// H(x, y) = F(x, y) - G(x, y); H(x, x) is the Robin value.
  [[nodiscard]] double regular_part(const Vec& x, const Vec& y) const;
  [[nodiscard]] double regular_part_offset(const Vec& x, const Vec& offset) const;
  // (grad_x H, grad_y H) at (x, x + offset). Both points interior.
  [[nodiscard]] std::pair<Vec, Vec> regular_part_grad_offset(const Vec& x, const Vec& offset) const;

  /// R(x) = H(x, x); unit ball: kappa/(N/2-s) (1-|x|^2)^{2s-N}. Throws
  /// DivergenceError within 1e-3 R of the boundary.
  [[nodiscard]] double robin(const Vec& x) const;
  [[nodiscard]] Vec robin_grad(const Vec& x) const;

  /// gamma_0^s(G(x, .))(z) = lim G(x, y)/delta(y)^s as y -> z;
  /// unit ball: (2^s kappa / s) (1-|x|^2)^s |x - z|^{-N}.
  [[nodiscard]] double trace_green(const Vec& x, const Vec& z) const;

  [[nodiscard]] double torsion(const Vec& x) const;        // u for h = 1
  [[nodiscard]] Vec torsion_grad(const Vec& x) const;
  [[nodiscard]] double torsion_trace() const;              // gamma_0^s(u) for h = 1

 private:
  struct Local {
    Vec x, y, d;  // unit-ball coordinates, d = y - x
  };
  [[nodiscard]] Local to_unit(const Vec& x, const Vec& offset) const;
  [[nodiscard]] double green_unit(const Local& l) const;
  [[nodiscard]] double regular_unit(const Local& l) const;
  [[nodiscard]] std::pair<Vec, Vec> regular_grad_unit(const Local& l) const;

  BallDomain domain_;
  FracParams params_;
  double b_;
  double kappa_;
  double beta_;
  double scale_;  // R^{2s-N}
};

struct TraceOptions {
  double eps0 = 0.0;  // 0 selects 1e-2 * radius
  int levels = 3;
  double oscillation_tolerance = 1e-2;
};

/// Richardson-extrapolated limit of u(z - eps nu) / eps^s over eps0, eps0/2, eps0/4.
[[nodiscard]] double trace_numeric(const std::function<double(const Vec&)>& u, const BallDomain& d, const Vec& z,
                                   const FracParams& p, const TraceOptions& opts = {});

}  // namespace fracshape
