#include "fracshape/vec.hpp"

#include <algorithm>
#include <utility>

namespace fracshape {
namespace {

// Cyclic Jacobi sweeps on a symmetric matrix; returns its eigenvalues.
std::array<double, kMaxDim> symmetric_eigenvalues(Mat a) {
  const int n = a.dim();
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-300) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::array<double, kMaxDim> ev{};
  for (int i = 0; i < n; ++i) ev[i] = a(i, i);
  return ev;
}

std::pair<double, double> singular_range(const Mat& m) {
  Mat mtm(m.dim());
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j)
      for (int k = 0; k < m.dim(); ++k) mtm(i, j) += m(k, i) * m(k, j);
  const auto ev = symmetric_eigenvalues(mtm);
  double lo = ev[0], hi = ev[0];
  for (int i = 1; i < m.dim(); ++i) {
    lo = std::min(lo, ev[i]);
    hi = std::max(hi, ev[i]);
  }
  return {std::sqrt(std::max(lo, 0.0)), std::sqrt(std::max(hi, 0.0))};
}

}  // namespace

double Mat::max_singular_value() const noexcept {
  if (dim_ == 0) return 0.0;
  return singular_range(*this).second;
}

double Mat::min_singular_value() const noexcept {
  if (dim_ == 0) return 0.0;
  return singular_range(*this).first;
}

}  // namespace fracshape
