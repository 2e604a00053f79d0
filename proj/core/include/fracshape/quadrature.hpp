#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fracshape::quad {

struct Node1d {
  double x;       // abscissa in [0, 1] (tanh-sinh) or [-1, 1] (Gauss-Legendre)
  double weight;
};

/// Gauss-Legendre rule with n points on [-1, 1].
[[nodiscard]] std::vector<Node1d> gauss_legendre(int n);

// Tanh-sinh node on [0, 1], carrying both endpoint distances so callers can
// resolve algebraic endpoint singularities without cancellation.
struct EndpointNode {
  double from_left;   // x
  double from_right;  // 1 - x
  double weight;
};

/// Double-exponential (tanh-sinh) rule on [0, 1] with 2n+1 nodes. Nodes are
/// truncated where the distance to an endpoint drops below `min_gap`.
[[nodiscard]] std::vector<EndpointNode> tanh_sinh(int n, double min_gap = 1e-60);

/// Gauss-Jacobi rule on [0, 1] for the weight (1-x)^alpha x^beta, alpha, beta > -1
/// (Golub-Welsch). Weights include the weight function, so sum w g(x) ~ int (1-x)^alpha x^beta g.
[[nodiscard]] std::vector<EndpointNode> gauss_jacobi(int n, double alpha, double beta = 0.0);

/// Integrates f over [a, b] with a tanh-sinh rule; f receives
/// (x, x - a, b - x).
[[nodiscard]] double integrate_tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b,
                                         int n = 60, double min_gap = 1e-60);

/// Integrates f over [a, inf) via x = a + scale * (1/u - 1), mapping onto (0, 1].
[[nodiscard]] double integrate_to_infinity(const std::function<double(double)>& f, double a, double scale, int n = 60);

}  // namespace fracshape::quad
