#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "biquad/errors.hpp"

namespace biquad {

using Vector = std::vector<double>;

/// Dense row-major matrix.  Sized for desk-scale problems; no view semantics.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  Vector column(std::size_t j) const {
    Vector c(rows);
    for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
    return c;
  }

  void set_column(std::size_t j, const Vector& c) {
    for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = c[i];
  }
};

/// A Matrix whose entries satisfy entries(i,j) == entries(j,i) bit-for-bit.
/// All producers in this library fill one triangle and mirror it.
using SymMatrix = Matrix;

inline Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw DimensionMismatch("matmul: inner dimensions differ");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline Vector matvec(const Matrix& a, const Vector& x) {
  if (a.cols != x.size()) throw DimensionMismatch("matvec: dimensions differ");
  Vector y(a.rows, 0.0);
  for (std::size_t i = 0; i < a.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline double frobenius_norm(const Matrix& a) {
  double s = 0.0;
  for (double v : a.data) s += v * v;
  return std::sqrt(s);
}

inline double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data) m = std::max(m, std::abs(v));
  return m;
}

inline double dot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline void scale_in_place(Vector& a, double c) {
  for (double& v : a) v *= c;
}

/// Flips the sign so the first component above threshold is positive.
/// Used everywhere a unit vector is only determined up to sign.
inline void sign_normalize(Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  if (m == 0.0) return;
  for (double x : v) {
    if (std::abs(x) > 1e-14 * m) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      return;
    }
  }
}

/// Strict lexicographic order on numeric vectors (used only for deterministic
/// tie-breaking between solver starts).
inline bool lex_less(const Vector& a, const Vector& b) {
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return a.size() < b.size();
}

}  // namespace biquad
