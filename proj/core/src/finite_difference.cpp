#include "fracshape/finite_difference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracshape/errors.hpp"

namespace fracshape {

FDEstimate richardson_central(const std::function<double(double)>& f, const FDSchedule& s) {
  if (!(s.t0 > 0.0) || s.levels < 2 || s.order < 1) throw DomainError("invalid finite-difference schedule");
  FDEstimate est;
  const int n = s.levels;
  double noise = 0.0;
  for (int k = 0; k < n; ++k) {
    const double t = s.t0 / std::pow(2.0, k);
    const double fp = f(t), fm = f(-t);
    est.differences.push_back((fp - fm) / (2.0 * t));
    noise = std::max(noise, 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::fabs(fp), std::fabs(fm)) / t);
  }
  const double dscale = std::fabs(est.differences.back());
  noise = std::max({noise, s.noise_floor * dscale, s.absolute_floor});

  std::vector<std::vector<double>> table(n);
  for (int k = 0; k < n; ++k) {
    table[k].push_back(est.differences[k]);
    for (int j = 1; j <= k; ++j) {
      const double q = std::pow(2.0, s.order + 2 * (j - 1));
      table[k].push_back((q * table[k][j - 1] - table[k - 1][j - 1]) / (q - 1.0));
    }
  }
  est.value = table[n - 1][n - 1];

  const double expected = std::pow(2.0, s.order);
  est.converged = true;
  for (int k = 0; k + 2 < n; ++k) {
    const double a = est.differences[k] - est.differences[k + 1];
    const double b = est.differences[k + 1] - est.differences[k + 2];
    if (std::fabs(a) <= noise && std::fabs(b) <= noise) {
      est.ratios.push_back(expected);  // both differences are rounding noise
      continue;
    }
    const double r = b != 0.0 ? a / b : std::numeric_limits<double>::infinity();
    est.ratios.push_back(r);
    // The finest difference may already sit at the noise floor.
    if (std::fabs(b) <= noise && std::fabs(a) <= 16.0 * noise) continue;
    if (!(std::fabs(r - expected) <= s.ratio_tolerance * expected)) est.converged = false;
  }
  // Two levels give no ratio to inspect.
  if (n == 2) est.converged = std::isfinite(est.value);
  return est;
}

}  // namespace fracshape
