#include "fracshape/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracshape/errors.hpp"

namespace fracshape::quad {

std::vector<Node1d> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre needs n >= 1");
  std::vector<Node1d> rule(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule[i] = {-x, w};
    rule[n - 1 - i] = {x, w};
  }
  if (n % 2 == 1) rule[n / 2].x = 0.0;
  return rule;
}

std::vector<EndpointNode> tanh_sinh(int n, double min_gap) {
  if (n < 1) throw DomainError("tanh_sinh needs n >= 1");
  if (!(min_gap > 0.0 && min_gap < 0.5)) throw DomainError("tanh_sinh min_gap must lie in (0, 0.5)");
  const double t_max = std::asinh(std::log(1.0 / min_gap) / std::numbers::pi);
  const double h = t_max / n;
  std::vector<EndpointNode> rule;
  rule.reserve(2 * n + 1);
  for (int k = -n; k <= n; ++k) {
    const double t = k * h;
    const double u = 0.5 * std::numbers::pi * std::sinh(t);
    const double e_neg = std::exp(-2.0 * std::fabs(u));
    // Distances to the near and far endpoint, computed without cancellation.
    const double near = e_neg / (1.0 + e_neg);
    const double far = 1.0 / (1.0 + e_neg);
    const double sech2 = 4.0 * e_neg / ((1.0 + e_neg) * (1.0 + e_neg));
    const double w = 0.5 * h * 0.5 * std::numbers::pi * std::cosh(t) * sech2;
    if (u < 0.0)
      rule.push_back({near, far, w});
    else
      rule.push_back({far, near, w});
  }
  return rule;
}

std::vector<EndpointNode> gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw DomainError("gauss_jacobi needs n >= 1");
  if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("gauss_jacobi needs alpha, beta > -1");
  // Jacobi matrix for (1-t)^alpha (1+t)^beta on [-1, 1].
  const double ab = alpha + beta;
  std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double c = 2.0 * k + ab;
    d[k] = k == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (c * (c + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double c = 2.0 * k + ab;
    // For k = 1 the factor (k + alpha + beta) equals c - 1 and is cancelled by hand.
    const double num = 4.0 * k * (k + alpha) * (k + beta) * (k == 1 ? 1.0 : (k + ab) / (c - 1.0));
    e[k - 1] = std::sqrt(num / (c * c * (c + 1.0)));
  }
  z[0] = 1.0;
  // Implicit QL with Wilkinson shifts; only the first eigenvector row is kept.
  for (int l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      int m = l;
      for (; m < n - 1; ++m) {
        const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
        if (std::fabs(e[m]) <= 1e-17 * dd) break;
      }
      if (m == l) break;
      if (iter > 60) throw ConvergenceError("gauss_jacobi: eigenvalue iteration did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  // Total mass on [0, 1] is B(alpha+1, beta+1).
  const double mu0 = std::exp(std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
  std::vector<EndpointNode> rule(n);
  for (int k = 0; k < n; ++k) {
    const double t = d[k];
    rule[k] = {0.5 * (1.0 + t), 0.5 * (1.0 - t), mu0 * z[k] * z[k]};
  }
  std::sort(rule.begin(), rule.end(), [](const EndpointNode& a, const EndpointNode& b) { return a.from_left < b.from_left; });
  return rule;
}

double integrate_tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b, int n,
                           double min_gap) {
  const double len = b - a;
  if (len == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& node : tanh_sinh(n, min_gap)) {
    const double dl = len * node.from_left;
    const double dr = len * node.from_right;
    sum += node.weight * f(a + dl, dl, dr);
  }
  return sum * len;
}

double integrate_to_infinity(const std::function<double(double)>& f, double a, double scale, int n) {
  double sum = 0.0;
  for (const auto& node : tanh_sinh(n, 1e-30)) {
    const double u = node.from_left;
    const double x = a + scale * (node.from_right / u);
    sum += node.weight * f(x) * scale / (u * u);
  }
  return sum;
}

}  // namespace fracshape::quad
