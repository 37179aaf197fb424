#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "biquad/matrix.hpp"

namespace biquad {

/// Dense fourth-order tensor of shape m x n x m x n with no symmetry
/// requirement.  Entries are stored flat in row-major (i1, j1, i2, j2) order,
/// so the flat array doubles as the mn x mn square flattening.
class Tensor4 {
 public:
  Tensor4(std::size_t m, std::size_t n)
      : m_(m), n_(n), a_(m * n * m * n, 0.0) {}

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }

  std::size_t flat_index(std::size_t i1, std::size_t j1, std::size_t i2,
                         std::size_t j2) const {
    return ((i1 * n_ + j1) * m_ + i2) * n_ + j2;
  }
  double at(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) const {
    return a_[flat_index(i1, j1, i2, j2)];
  }
  double& at(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
    return a_[flat_index(i1, j1, i2, j2)];
  }

  const std::vector<double>& entries() const { return a_; }
  std::vector<double>& entries() { return a_; }

 private:
  std::size_t m_, n_;
  std::vector<double> a_;
};

/// Tensor in BQ(m, n): invariant under i1<->i2 and j1<->j2 swaps, exactly.
/// Instances only come out of the factory functions below, each of which
/// writes one value per symmetry orbit, so the invariant holds bit-for-bit.
class BiquadraticTensor {
 public:
  using OrbitFn = std::function<double(std::size_t, std::size_t, std::size_t, std::size_t)>;

  static BiquadraticTensor zero(std::size_t m, std::size_t n) {
    return BiquadraticTensor(m, n);
  }

  /// Builds a tensor from its orbit representatives: `fn(i1, j1, i2, j2)` is
  /// called once per orbit, with i1 >= i2 and j1 >= j2, and the value is
  /// assigned to all four symmetric positions.
  static BiquadraticTensor from_representatives(std::size_t m, std::size_t n,
                                                const OrbitFn& fn);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }

  std::size_t flat_index(std::size_t i1, std::size_t j1, std::size_t i2,
                         std::size_t j2) const {
    return ((i1 * n_ + j1) * m_ + i2) * n_ + j2;
  }
  double at(std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) const {
    return a_[flat_index(i1, j1, i2, j2)];
  }

  const std::vector<double>& entries() const { return a_; }

  Tensor4 to_tensor4() const;

 private:
  BiquadraticTensor(std::size_t m, std::size_t n)
      : m_(m), n_(n), a_(m * n * m * n, 0.0) {}

  std::size_t m_, n_;
  std::vector<double> a_;
};

/// General dense third-order tensor of shape p x m x n, flat row-major (k, i, j).
class ThirdOrderTensor {
 public:
  ThirdOrderTensor(std::size_t p, std::size_t m, std::size_t n)
      : p_(p), m_(m), n_(n), t_(p * m * n, 0.0) {}

  std::size_t p() const { return p_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }

  double at(std::size_t k, std::size_t i, std::size_t j) const {
    return t_[(k * m_ + i) * n_ + j];
  }
  double& at(std::size_t k, std::size_t i, std::size_t j) {
    return t_[(k * m_ + i) * n_ + j];
  }

  const std::vector<double>& entries() const { return t_; }
  std::vector<double>& entries() { return t_; }

 private:
  std::size_t p_, m_, n_;
  std::vector<double> t_;
};

/// Matrix of orbit representatives, m(m+1)/2 rows by n(n+1)/2 columns.
/// Row s indexes the unordered pair (i1 >= i2) via s = i1(i1+1)/2 + i2
/// (0-based); columns index j-pairs the same way.
struct PairFlattening {
  std::size_t m = 0, n = 0;
  Matrix mat;
};

/// 0-based unordered-pair index, requires hi >= lo.
inline std::size_t pair_index(std::size_t hi, std::size_t lo) {
  return hi * (hi + 1) / 2 + lo;
}

// --- validation / projection -----------------------------------------------

/// Accepts T as biquadratic if every symmetry deviation is at most `tol`
/// (absolute), then orbit-averages so the invariant holds exactly.
/// Throws SymmetryViolation carrying the maximum deviation otherwise.
BiquadraticTensor validate(const Tensor4& t, double tol);

/// Orthogonal projection of T onto BQ(m, n): each entry becomes the mean of
/// its four-element symmetry orbit.  Idempotent; preserves the quartic form.
BiquadraticTensor symmetrize(const Tensor4& t);

/// Maximum symmetry deviation of T (0 for biquadratic input).
double symmetry_deviation(const Tensor4& t);

// --- forms and flattening maps ----------------------------------------------

/// <A, x o y o x o y> = sum a[i1][j1][i2][j2] x_i1 y_j1 x_i2 y_j2.
double quartic_form(const BiquadraticTensor& a, const Vector& x, const Vector& y);

/// Square flattening M(A): mn x mn symmetric, pair index (i, j) -> i*n + j.
SymMatrix flatten_square(const BiquadraticTensor& a);

/// Square flattening of a general fourth-order tensor (no symmetry claim).
Matrix flatten_square(const Tensor4& t);

/// Inverse reshape of flatten_square with no symmetry requirement.
Tensor4 fold_square(const Matrix& m, std::size_t rows_m, std::size_t cols_n);

/// Inverse of flatten_square; validates the folded tensor at `tol`.
BiquadraticTensor unflatten_square(const SymMatrix& m, std::size_t rows_m,
                                   std::size_t cols_n, double tol);

/// Mode-1 flattening: m x (n*m*n), fiber a[.][j1][i2][j2] in column
/// (j1*m + i2)*n + j2.  Mode-2: n x (m*m*n) with column (i1*m + i2)*n + j2.
Matrix flatten_mode1(const BiquadraticTensor& a);
Matrix flatten_mode2(const BiquadraticTensor& a);

/// Representative matrix P with p[s][t] = a[i1][j1][i2][j2], i1 >= i2, j1 >= j2.
PairFlattening pair_flatten(const BiquadraticTensor& a);

/// Plain (unscaled) fold of a packed pair vector to a symmetric matrix:
/// U[i1][i2] = u[pair_index(i1, i2)] mirrored.
SymMatrix fold_sym(const Vector& u, std::size_t m);

// --- constructors -------------------------------------------------------------

/// Diagonal tensor: a[i][j][i][j] = d(i, j), all other orbits zero.
BiquadraticTensor diagonal(std::size_t m, std::size_t n, const Matrix& d);

/// Identity tensor: diagonal of all ones (folds from the mn x mn identity).
BiquadraticTensor identity(std::size_t m, std::size_t n);

/// Biquadratic rank-one tensor x o y o x o y (x, y need not be unit).
BiquadraticTensor rank_one(const Vector& x, const Vector& y);

/// Gram contraction of a third-order tensor with itself over the first index,
/// then symmetrized.  The result is positive semi-definite by construction.
BiquadraticTensor contract_third_order(const ThirdOrderTensor& t);

// --- linear-space operations ---------------------------------------------------

double inner(const Tensor4& a, const Tensor4& b);
double inner(const BiquadraticTensor& a, const BiquadraticTensor& b);
double frobenius(const Tensor4& a);
double frobenius(const BiquadraticTensor& a);
Tensor4 add(const Tensor4& a, const Tensor4& b);
BiquadraticTensor add(const BiquadraticTensor& a, const BiquadraticTensor& b);
Tensor4 scale(const Tensor4& a, double c);
BiquadraticTensor scale(const BiquadraticTensor& a, double c);

}  // namespace biquad
