#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "clar/error.hpp"

namespace clar {

// Dense row-major matrix of doubles. Everything here is desk scale
// (dimensions in the tens to low hundreds), so no BLAS behind it.
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::span<double> row(std::size_t i) {
    return std::span<double>(data.data() + i * cols, cols);
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(data.data() + i * cols, cols);
  }

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }

  void fill(double v) { std::fill(data.begin(), data.end(), v); }

  bool same_shape(const Mat& o) const {
    return rows == o.rows && cols == o.cols;
  }
};

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

// y = M x
inline void matvec(const Mat& m, std::span<const double> x,
                   std::span<double> y) {
  for (std::size_t i = 0; i < m.rows; ++i) y[i] = dot(m.row(i), x);
}

// y = M^T x
inline void matvec_transposed(const Mat& m, std::span<const double> x,
                              std::span<double> y) {
  for (std::size_t j = 0; j < m.cols; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double xi = x[i];
    auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols; ++j) y[j] += r[j] * xi;
  }
}

// M += scale * a b^T
inline void add_outer(Mat& m, double scale, std::span<const double> a,
                      std::span<const double> b) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    auto r = m.row(i);
    const double s = scale * a[i];
    for (std::size_t j = 0; j < m.cols; ++j) r[j] += s * b[j];
  }
}

// Solves A X = B in place of a copy; A is n x n, B is n x k.
// Gaussian elimination with partial pivoting; near-zero pivots raise a
// numeric error.
inline Mat solve_linear(Mat a, Mat b) {
  if (a.rows != a.cols || a.rows != b.rows)
    fail(ErrorCategory::Numeric, "solve_linear: shape mismatch");
  const std::size_t n = a.rows;
  double scale = 0.0;
  for (double v : a.data) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a.at(r, col)) > std::abs(a.at(pivot, col))) pivot = r;
    if (std::abs(a.at(pivot, col)) <= 1e-13 * scale)
      fail(ErrorCategory::Numeric, "solve_linear: singular system");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j)
        std::swap(a.at(pivot, j), a.at(col, j));
      for (std::size_t j = 0; j < b.cols; ++j)
        std::swap(b.at(pivot, j), b.at(col, j));
    }
    const double d = a.at(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a.at(r, col) / d;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a.at(r, j) -= f * a.at(col, j);
      for (std::size_t j = 0; j < b.cols; ++j) b.at(r, j) -= f * b.at(col, j);
    }
  }
  Mat x(n, b.cols);
  for (std::size_t col = 0; col < b.cols; ++col) {
    for (std::size_t i = n; i-- > 0;) {
      double s = b.at(i, col);
      for (std::size_t j = i + 1; j < n; ++j) s -= a.at(i, j) * x.at(j, col);
      x.at(i, col) = s / a.at(i, i);
    }
  }
  return x;
}

}  // namespace clar
