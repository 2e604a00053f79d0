#pragma once

#include "fracshape/core_math.hpp"
#include "fracshape/geometry.hpp"
#include "fracshape/vec.hpp"

namespace fracshape {

/// omega_Y(y, z) = (c/2) [div Y(y) + div Y(z) - (N+2s) (Y(y)-Y(z)).(y-z) / |y-z|^2].
[[nodiscard]] double omega_Y(const VectorFieldSpec& Y, const Vec& y, const Vec& z, const FracParams& p);

/// Frozen-coefficient weight at x: (c/2) [2 div Y(x) - (N+2s) (DY(x)(y-z)).(y-z) / |y-z|^2].
[[nodiscard]] double omega_Y_frozen(const VectorFieldSpec& Y, const Vec& x, const Vec& y, const Vec& z,
                                    const FracParams& p);

/// kappa_Y(y, z) = omega_Y(y, z) |y-z|^{-2s-N}.
[[nodiscard]] double kappa_Y(const VectorFieldSpec& Y, const Vec& y, const Vec& z, const FracParams& p);

/// kappa_t(y, z) = (c/2) Jac(y) Jac(z) / |Phi_t(y) - Phi_t(z)|^{N+2s}.
[[nodiscard]] double kappa_t(const AffineFlow& f, double t, const Vec& y, const Vec& z, const FracParams& p);
[[nodiscard]] double kappa_t(const LinearFlow& f, double t, const Vec& y, const Vec& z, const FracParams& p);

// Majorant of | |x_t-y_t|^{2s-N} - |x_t-z_t|^{2s-N} |:
//   2s < 1:  max(|x-y|^{2s-N}, |x-z|^{2s-N})
//   2s > 1:  |y-z| max(|x-y|^{2s-N-1}, |x-z|^{2s-N-1})
//   s = 1/2: |y-z|^beta max(|x-y|^{1-N-beta}, |x-z|^{1-N-beta})
// `beta` is read only when s == 1/2.
[[nodiscard]] double f_x_bound(const Vec& x, const Vec& y, const Vec& z, const FracParams& p, double beta = 0.5);

}  // namespace fracshape
