#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <ostream>

namespace fracshape {

inline constexpr int kMaxDim = 3;

// Fixed-capacity vector for points and displacements in R^1..R^3.
class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim) : dim_(dim) { assert(dim >= 0 && dim <= kMaxDim); }
  Vec(std::initializer_list<double> values) : dim_(static_cast<int>(values.size())) {
    assert(dim_ <= kMaxDim);
    int i = 0;
    for (double v : values) c_[i++] = v;
  }

  static Vec unit(int dim, int axis) {
    Vec e(dim);
    e[axis] = 1.0;
    return e;
  }

  [[nodiscard]] int dim() const noexcept { return dim_; }
  double& operator[](int i) noexcept { return c_[i]; }
  double operator[](int i) const noexcept { return c_[i]; }

  Vec& operator+=(const Vec& o) noexcept {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) noexcept {
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(double a) noexcept {
    for (int i = 0; i < dim_; ++i) c_[i] *= a;
    return *this;
  }
  Vec& operator/=(double a) noexcept {
    for (int i = 0; i < dim_; ++i) c_[i] /= a;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) noexcept { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) noexcept { return a -= b; }
  friend Vec operator-(Vec a) noexcept { return a *= -1.0; }
  friend Vec operator*(Vec a, double k) noexcept { return a *= k; }
  friend Vec operator*(double k, Vec a) noexcept { return a *= k; }
  friend Vec operator/(Vec a, double k) noexcept { return a /= k; }

  friend bool operator==(const Vec& a, const Vec& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (int i = 0; i < a.dim_; ++i)
      if (a.c_[i] != b.c_[i]) return false;
    return true;
  }

  [[nodiscard]] double norm2() const noexcept {
    double r = 0.0;
    for (int i = 0; i < dim_; ++i) r += c_[i] * c_[i];
    return r;
  }
  [[nodiscard]] double norm() const noexcept { return std::sqrt(norm2()); }

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 0;
};

inline double dot(const Vec& a, const Vec& b) noexcept {
  double r = 0.0;
  for (int i = 0; i < a.dim(); ++i) r += a[i] * b[i];
  return r;
}

inline double distance(const Vec& a, const Vec& b) noexcept { return (a - b).norm(); }

inline std::ostream& operator<<(std::ostream& os, const Vec& v) {
  os << '(';
  for (int i = 0; i < v.dim(); ++i) os << (i ? ", " : "") << v[i];
  return os << ')';
}

// Row-major square matrix acting on Vec of the same dimension.
class Mat {
 public:
  Mat() = default;
  explicit Mat(int dim) : dim_(dim) {}

  static Mat identity(int dim) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }
  static Mat scalar(int dim, double a) {
    Mat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = a;
    return m;
  }

  [[nodiscard]] int dim() const noexcept { return dim_; }
  double& operator()(int i, int j) noexcept { return a_[i][j]; }
  double operator()(int i, int j) const noexcept { return a_[i][j]; }

  [[nodiscard]] double trace() const noexcept {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += a_[i][i];
    return t;
  }

  [[nodiscard]] double determinant() const noexcept {
    switch (dim_) {
      case 1: return a_[0][0];
      case 2: return a_[0][0] * a_[1][1] - a_[0][1] * a_[1][0];
      case 3:
        return a_[0][0] * (a_[1][1] * a_[2][2] - a_[1][2] * a_[2][1]) -
               a_[0][1] * (a_[1][0] * a_[2][2] - a_[1][2] * a_[2][0]) +
               a_[0][2] * (a_[1][0] * a_[2][1] - a_[1][1] * a_[2][0]);
      default: return 1.0;
    }
  }

  friend Vec operator*(const Mat& m, const Vec& x) noexcept {
    Vec r(m.dim_);
    for (int i = 0; i < m.dim_; ++i)
      for (int j = 0; j < m.dim_; ++j) r[i] += m.a_[i][j] * x[j];
    return r;
  }
  friend Mat operator+(Mat a, const Mat& b) noexcept {
    for (int i = 0; i < a.dim_; ++i)
      for (int j = 0; j < a.dim_; ++j) a.a_[i][j] += b.a_[i][j];
    return a;
  }
  friend Mat operator*(Mat a, double k) noexcept {
    for (int i = 0; i < a.dim_; ++i)
      for (int j = 0; j < a.dim_; ++j) a.a_[i][j] *= k;
    return a;
  }
  friend Mat operator*(double k, Mat a) noexcept { return a * k; }

  [[nodiscard]] Mat transpose() const noexcept {
    Mat t(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) t.a_[i][j] = a_[j][i];
    return t;
  }

  // Largest and smallest singular values via the eigenvalues of M^T M.
  [[nodiscard]] double max_singular_value() const noexcept;
  [[nodiscard]] double min_singular_value() const noexcept;

 private:
  std::array<std::array<double, kMaxDim>, kMaxDim> a_{};
  int dim_ = 0;
};

}  // namespace fracshape
