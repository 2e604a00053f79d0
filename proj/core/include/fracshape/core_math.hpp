#pragma once

#include <utility>

namespace fracshape {

// Dimension N and order s of (-Delta)^s. Construction validates
// N in {1,2,3}, 0 < s < 1 and N > 2s.
class FracParams {
 public:
  FracParams(int dim, double order);

  [[nodiscard]] int dim() const noexcept { return dim_; }
  [[nodiscard]] double s() const noexcept { return s_; }
  // N/2 - s, the second exponent of the ball Green profile.
  [[nodiscard]] double half_gap() const noexcept { return 0.5 * dim_ - s_; }

  friend bool operator==(const FracParams&, const FracParams&) = default;

 private:
  int dim_;
  double s_;
};

/// Gamma function for positive arguments; throws DomainError for x <= 0.
[[nodiscard]] double gamma_fn(double x);

/// Euler beta function B(a, b) for a, b > 0.
[[nodiscard]] double beta_fn(double a, double b);

/// c_{N,s} = pi^{-N/2} s 4^s Gamma((N+2s)/2) / Gamma(1-s), the constant in
/// front of the singular integral defining (-Delta)^s.
[[nodiscard]] double c_ns(const FracParams& p);

/// b_{N,s} = pi^{-N/2} 4^{-s} Gamma((N-2s)/2) / Gamma(s), so that
/// b_{N,s} |x|^{2s-N} is the fundamental solution.
[[nodiscard]] double b_ns(const FracParams& p);

/// Gamma(1+s)^2, the normalization of the fractional Hadamard formulas.
/// Accepts s in (0, 1]; s = 1 gives the classical value 1.
[[nodiscard]] double hadamard_const(double s);

/// kappa_{N,s} = Gamma(N/2) / (4^s pi^{N/2} Gamma(s)^2), the prefactor of
/// the closed-form ball Green function. kappa * B(s, N/2 - s) == b_{N,s}.
[[nodiscard]] double kappa_ns(const FracParams& p);

/// Torsion constant: u(x) = torsion_const * (1 - |x|^2)^s solves
/// (-Delta)^s u = 1 in the unit ball with zero exterior data.
[[nodiscard]] double torsion_const(const FracParams& p);

// Lower and upper unnormalized incomplete beta integrals
//   lower = int_0^x t^{a-1} (1-t)^{b-1} dt,  upper = int_x^1 ...
// Both are returned to full relative precision; `one_minus_x` must be 1 - x
// computed without cancellation by the caller.
struct IncBeta {
  double lower;
  double upper;
};
[[nodiscard]] IncBeta incomplete_beta(double a, double b, double x, double one_minus_x);

/// I(r) = int_0^r t^{s-1} (1+t)^{-N/2} dt. I(inf) = B(s, N/2 - s).
[[nodiscard]] double ring_integral(double r, const FracParams& p);

/// T(r) = int_r^inf t^{s-1} (1+t)^{-N/2} dt = B(s, N/2-s) - I(r), computed
/// directly so it keeps relative accuracy for large r.
[[nodiscard]] double ring_tail(double r, const FracParams& p);

}  // namespace fracshape
