#include "fracshape/core_math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fracshape/errors.hpp"

namespace fracshape {
namespace {

constexpr double kPi = std::numbers::pi;

// Modified Lentz evaluation of the incomplete-beta continued fraction.
// Converges quickly for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 400;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw ConvergenceError("incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                         ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

// x^a (1-x)^b CF(a, b, x) / a == int_0^x t^{a-1}(1-t)^{b-1} dt.
double lower_by_fraction(double a, double b, double x, double one_minus_x) {
  if (x <= 0.0) return 0.0;
  const double front = std::exp(a * std::log(x) + b * std::log(one_minus_x));
  return front * beta_continued_fraction(a, b, x) / a;
}

}  // namespace

FracParams::FracParams(int dim, double order) : dim_(dim), s_(order) {
  if (dim < 1 || dim > 3) throw DomainError("dimension must be 1, 2 or 3, got " + std::to_string(dim));
  if (!(order > 0.0 && order < 1.0)) throw DomainError("order s must lie in (0,1), got " + std::to_string(order));
  if (!(dim > 2.0 * order)) throw DomainError("need N > 2s for the fundamental solution");
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn requires a positive argument, got " + std::to_string(x));
  return std::tgamma(x);
}

double beta_fn(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("beta_fn requires positive arguments");
  if (a + b < 150.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double c_ns(const FracParams& p) {
  const double n = p.dim(), s = p.s();
  return std::pow(kPi, -0.5 * n) * s * std::pow(4.0, s) * gamma_fn(0.5 * (n + 2.0 * s)) / gamma_fn(1.0 - s);
}

double b_ns(const FracParams& p) {
  const double n = p.dim(), s = p.s();
  return std::pow(kPi, -0.5 * n) * std::pow(4.0, -s) * gamma_fn(0.5 * (n - 2.0 * s)) / gamma_fn(s);
}

double hadamard_const(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("hadamard_const requires s in (0,1]");
  const double g = gamma_fn(1.0 + s);
  return g * g;
}

double kappa_ns(const FracParams& p) {
  const double n = p.dim(), s = p.s();
  const double gs = gamma_fn(s);
  return gamma_fn(0.5 * n) / (std::pow(4.0, s) * std::pow(kPi, 0.5 * n) * gs * gs);
}

double torsion_const(const FracParams& p) {
  const double n = p.dim(), s = p.s();
  return std::pow(4.0, -s) * gamma_fn(0.5 * n) / (gamma_fn(0.5 * n + s) * gamma_fn(1.0 + s));
}

IncBeta incomplete_beta(double a, double b, double x, double one_minus_x) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("incomplete_beta requires positive exponents");
  if (x < 0.0 || one_minus_x < 0.0) throw DomainError("incomplete_beta requires x in [0,1]");
  const double total = beta_fn(a, b);
  if (x == 0.0) return {0.0, total};
  if (one_minus_x == 0.0) return {total, 0.0};
  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double lower = lower_by_fraction(a, b, x, one_minus_x);
    return {lower, total - lower};
  }
  const double upper = lower_by_fraction(b, a, one_minus_x, x);
  return {total - upper, upper};
}

double ring_integral(double r, const FracParams& p) {
  if (r < 0.0 || std::isnan(r)) throw DomainError("ring_integral requires r >= 0");
  const double a = p.half_gap();
  if (std::isinf(r)) return beta_fn(p.s(), a);
  // t = u/(1-u) maps the profile onto the incomplete beta B(u; s, N/2 - s).
  return incomplete_beta(p.s(), a, r / (1.0 + r), 1.0 / (1.0 + r)).lower;
}

double ring_tail(double r, const FracParams& p) {
  if (r < 0.0 || std::isnan(r)) throw DomainError("ring_tail requires r >= 0");
  if (std::isinf(r)) return 0.0;
  return incomplete_beta(p.s(), p.half_gap(), r / (1.0 + r), 1.0 / (1.0 + r)).upper;
}

}  // namespace fracshape
