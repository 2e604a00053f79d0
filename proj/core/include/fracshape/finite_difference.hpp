#pragma once

#include <functional>
#include <vector>

namespace fracshape {

// Central differences D_k = (f(t_k) - f(-t_k)) / (2 t_k), t_k = t0 / 2^k,
// combined by Richardson extrapolation in powers of t^2.
struct FDSchedule {
  double t0 = 1e-2;
  int levels = 3;
  int order = 2;                  // leading error exponent of D_k
  double ratio_tolerance = 0.2;   // accepted spread of (D_k - D_{k+1}) / (D_{k+1} - D_{k+2}) around 2^order
  double noise_floor = 1e-12;     // relative size of differences treated as rounding
  double absolute_floor = 1e-13;  // differences below this are rounding too (quantities vanishing by symmetry)
};

struct FDEstimate {
  double value = 0.0;
  std::vector<double> differences;  // D_k
  std::vector<double> ratios;       // observed successive-difference ratios
  bool converged = false;
};

/// Throws DomainError for an invalid schedule; never throws on non-convergence
/// (callers inspect `converged`).
[[nodiscard]] FDEstimate richardson_central(const std::function<double(double)>& f, const FDSchedule& s);

}  // namespace fracshape
