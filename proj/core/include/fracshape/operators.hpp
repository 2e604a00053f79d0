#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "fracshape/core_math.hpp"
#include "fracshape/fields.hpp"
#include "fracshape/finite_difference.hpp"
#include "fracshape/geometry.hpp"
#include "fracshape/green_ball.hpp"

namespace fracshape {

struct FracLaplacianOptions {
  int radial_order = 40;    // tanh-sinh half-width per radial panel
  int angular_order = 48;   // directions on the half circle (N=2) or polar GL count (N=3)
  double taylor_fraction = 1e-3;  // quadratic-model radius as a fraction of the near-field radius
  double exterior_switch = 1.1;   // support-centred rule beyond this many support radii
};

// (-Delta)^s w(x) = (c/2) int (2 w(x) - w(x+z) - w(x-z)) |z|^{-N-2s} dz,
// integrated along rays through x with panels split where the rays cross
// the field's shells (for N = 2 the angles are also split where the lines
// graze a shell). Inside the near-field radius the second difference is
// replaced by its quadratic Taylor model; beyond the support the constant
// far value gives an analytic tail. Points beyond `exterior_switch` support
// radii from its centre use -c int (w(y) - w_far) |x-y|^{-N-2s} dy directly.
// Throws DomainError when an unbounded field declares growth >= 2s.
[[nodiscard]] double frac_laplacian_pv(const Field& w, const Vec& x, const FracParams& p,
                                       const FracLaplacianOptions& opts = {});

struct SolveOptions {
  int order = 20;
  int angular = 0;         // fixed direction count for volume_rule_singular; 0 = automatic
  bool verify = false;     // re-solve at half order and compare
  double tolerance = 1e-8;
};

/// u(x) = int_Omega G(x, y) h(y) dy with the singular volume rule at x.
[[nodiscard]] double solve_dirichlet(const GreenBall& g, const SourceTerm& h, const Vec& x,
                                     const SolveOptions& opts = {});
[[nodiscard]] double solve_dirichlet(const BallDomain& d, const SourceTerm& h, const Vec& x, const FracParams& p,
                                     const SolveOptions& opts = {});

struct RepresentationOptions {
  int order = 96;
  int table_points = 24;  // Chebyshev points per radial panel of the tabulated (-Delta)^s psi
  FracLaplacianOptions laplacian;
};

/// |psi(x) - int_Omega G(x, y) (-Delta)^s psi(y) dy| for a bump supported inside d.
/// The radial profile of (-Delta)^s psi is tabulated on Chebyshev panels and
/// the volume rule splits its rays at the panel spheres.
[[nodiscard]] double representation_check(const BallDomain& d, const SmoothBump& psi, const Vec& x,
                                          const FracParams& p, const RepresentationOptions& opts = {});

struct IdentityPair {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_std_error = 0.0;  // nonzero only for randomized quadrature
};

struct DualityOptions {
  int volume_order = 24;
  int boundary_order = 64;
  SolveOptions solve;
  TraceOptions trace;
};

// lhs = int_Omega (int_dOmega trace_green(x, z) f(z) dz) h(x) dx with the
// closed-form trace; rhs = int_dOmega f trace_numeric(u) with u the Green
// potential of h.
[[nodiscard]] IdentityPair duality_lemma_ab(const BallDomain& d, const std::function<double(const Vec&)>& f,
                                            const SourceTerm& h, const FracParams& p,
                                            const DualityOptions& opts = {});

struct GradientIdentityOptions {
  int order = 24;
  SolveOptions solve;
  FDSchedule fd;
  double step_fraction = 0.05;  // first FD step as a fraction of delta(x) / |Y(x)|
};

// lhs = int G(x,y) div(hY)(y) dy + int (grad_y G . Y(y) + grad_x G . Y(x)) h(y) dy,
// rhs = grad u(x) . Y(x) by finite differences of solve_dirichlet. Y affine.
[[nodiscard]] IdentityPair gradient_identity_check(const BallDomain& d, const SourceTerm& h,
                                                   const VectorFieldSpec& Y, const Vec& x, const FracParams& p,
                                                   const GradientIdentityOptions& opts = {});

struct AppendixCOptions {
  int order = 30;                  // tanh-sinh half-width for the N = 1 panels
  int angular_order = 32;          // rhs directions for N >= 2
  FracLaplacianOptions laplacian;
  std::size_t qmc_points = 1u << 14;
  int qmc_shifts = 8;
  double max_relative_std_error = 0.05;
  std::uint64_t seed = 1;
};

// lhs = iint (w(y)-w(z)) (|y|^{2s-N} - |z|^{2s-N}) |y-z|^{-N-2s} omega^x_Y(y,z) dy dz,
// rhs = -(N-2s) int ([DY(x) z] . z / |z|^{N-2s+2}) (-Delta)^s w(z) dz.
// N = 1 uses nested tanh-sinh on the difference variable; N >= 2 uses
// randomly shifted Halton points and reports the standard error.
[[nodiscard]] IdentityPair appendix_c_identity(const Vec& x, const VectorFieldSpec& Y, const SmoothBump& w,
                                               const FracParams& p, const AppendixCOptions& opts = {});

}  // namespace fracshape
