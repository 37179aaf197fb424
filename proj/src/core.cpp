#include "biquad/core.hpp"

#include <cmath>
#include <string>

namespace biquad {

namespace {

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw Error(std::string(what) + ": non-finite entry");
}

}  // namespace

BiquadraticTensor BiquadraticTensor::from_representatives(std::size_t m,
                                                          std::size_t n,
                                                          const OrbitFn& fn) {
  BiquadraticTensor out(m, n);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t i2 = 0; i2 <= i1; ++i2)
      for (std::size_t j1 = 0; j1 < n; ++j1)
        for (std::size_t j2 = 0; j2 <= j1; ++j2) {
          const double v = fn(i1, j1, i2, j2);
          out.a_[out.flat_index(i1, j1, i2, j2)] = v;
          out.a_[out.flat_index(i2, j1, i1, j2)] = v;
          out.a_[out.flat_index(i1, j2, i2, j1)] = v;
          out.a_[out.flat_index(i2, j2, i1, j1)] = v;
        }
  return out;
}

Tensor4 BiquadraticTensor::to_tensor4() const {
  Tensor4 t(m_, n_);
  t.entries() = a_;
  return t;
}

double symmetry_deviation(const Tensor4& t) {
  const std::size_t m = t.m(), n = t.n();
  double worst = 0.0;
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          const double v = t.at(i1, j1, i2, j2);
          worst = std::max(worst, std::abs(v - t.at(i2, j1, i1, j2)));
          worst = std::max(worst, std::abs(v - t.at(i1, j2, i2, j1)));
        }
  return worst;
}

BiquadraticTensor validate(const Tensor4& t, double tol) {
  if (tol < 0.0) throw Error("validate: negative tolerance");
  check_finite(t.entries(), "validate");
  const double dev = symmetry_deviation(t);
  if (dev > tol)
    throw SymmetryViolation("validate: symmetry deviation " + std::to_string(dev) +
                                " exceeds tolerance " + std::to_string(tol),
                            dev);
  return symmetrize(t);
}

BiquadraticTensor symmetrize(const Tensor4& t) {
  return BiquadraticTensor::from_representatives(
      t.m(), t.n(),
      [&t](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        // ((a+b)+(c+d))*0.25 is exact when all four values coincide, which
        // makes the projection bitwise idempotent.
        return ((t.at(i1, j1, i2, j2) + t.at(i2, j1, i1, j2)) +
                (t.at(i1, j2, i2, j1) + t.at(i2, j2, i1, j1))) *
               0.25;
      });
}

double quartic_form(const BiquadraticTensor& a, const Vector& x, const Vector& y) {
  const std::size_t m = a.m(), n = a.n();
  if (x.size() != m || y.size() != n)
    throw DimensionMismatch("quartic_form: vector sizes do not match tensor");
  const std::size_t nn = m * n;
  Vector z(nn);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) z[i * n + j] = x[i] * y[j];
  // The flat entry array is exactly the square flattening in row-major order.
  const std::vector<double>& flat = a.entries();
  double q = 0.0;
  for (std::size_t r = 0; r < nn; ++r) {
    if (z[r] == 0.0) continue;
    double row = 0.0;
    const double* arow = flat.data() + r * nn;
    for (std::size_t c = 0; c < nn; ++c) row += arow[c] * z[c];
    q += z[r] * row;
  }
  return q;
}

SymMatrix flatten_square(const BiquadraticTensor& a) {
  const std::size_t nn = a.m() * a.n();
  SymMatrix mat(nn, nn);
  mat.data = a.entries();
  return mat;
}

Matrix flatten_square(const Tensor4& t) {
  const std::size_t nn = t.m() * t.n();
  Matrix mat(nn, nn);
  mat.data = t.entries();
  return mat;
}

Tensor4 fold_square(const Matrix& m, std::size_t rows_m, std::size_t cols_n) {
  if (m.rows != rows_m * cols_n || m.cols != rows_m * cols_n)
    throw DimensionMismatch("fold_square: matrix order is not m*n");
  Tensor4 t(rows_m, cols_n);
  t.entries() = m.data;
  return t;
}

BiquadraticTensor unflatten_square(const SymMatrix& m, std::size_t rows_m,
                                   std::size_t cols_n, double tol) {
  if (m.rows != rows_m * cols_n || m.cols != rows_m * cols_n)
    throw DimensionMismatch("unflatten_square: matrix order is not m*n");
  Tensor4 t(rows_m, cols_n);
  t.entries() = m.data;
  return validate(t, tol);
}

Matrix flatten_mode1(const BiquadraticTensor& a) {
  const std::size_t m = a.m(), n = a.n();
  Matrix out(m, n * m * n);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2)
          out(i1, (j1 * m + i2) * n + j2) = a.at(i1, j1, i2, j2);
  return out;
}

Matrix flatten_mode2(const BiquadraticTensor& a) {
  const std::size_t m = a.m(), n = a.n();
  Matrix out(n, m * m * n);
  for (std::size_t j1 = 0; j1 < n; ++j1)
    for (std::size_t i1 = 0; i1 < m; ++i1)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2)
          out(j1, (i1 * m + i2) * n + j2) = a.at(i1, j1, i2, j2);
  return out;
}

PairFlattening pair_flatten(const BiquadraticTensor& a) {
  const std::size_t m = a.m(), n = a.n();
  PairFlattening pf;
  pf.m = m;
  pf.n = n;
  pf.mat = Matrix(m * (m + 1) / 2, n * (n + 1) / 2);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t i2 = 0; i2 <= i1; ++i2)
      for (std::size_t j1 = 0; j1 < n; ++j1)
        for (std::size_t j2 = 0; j2 <= j1; ++j2)
          pf.mat(pair_index(i1, i2), pair_index(j1, j2)) = a.at(i1, j1, i2, j2);
  return pf;
}

SymMatrix fold_sym(const Vector& u, std::size_t m) {
  if (u.size() != m * (m + 1) / 2)
    throw DimensionMismatch("fold_sym: packed length is not m(m+1)/2");
  SymMatrix out(m, m);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t i2 = 0; i2 <= i1; ++i2) {
      const double v = u[pair_index(i1, i2)];
      out(i1, i2) = v;
      out(i2, i1) = v;
    }
  return out;
}

BiquadraticTensor diagonal(std::size_t m, std::size_t n, const Matrix& d) {
  if (d.rows != m || d.cols != n)
    throw DimensionMismatch("diagonal: value array is not m x n");
  return BiquadraticTensor::from_representatives(
      m, n,
      [&d](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        return (i1 == i2 && j1 == j2) ? d(i1, j1) : 0.0;
      });
}

BiquadraticTensor identity(std::size_t m, std::size_t n) {
  Matrix ones(m, n);
  for (double& v : ones.data) v = 1.0;
  return diagonal(m, n, ones);
}

BiquadraticTensor rank_one(const Vector& x, const Vector& y) {
  if (x.empty() || y.empty()) throw DimensionMismatch("rank_one: empty vector");
  if (norm2(x) == 0.0 || norm2(y) == 0.0)
    throw Error("rank_one: x and y must be nonzero");
  return BiquadraticTensor::from_representatives(
      x.size(), y.size(),
      [&x, &y](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        return x[i1] * y[j1] * x[i2] * y[j2];
      });
}

BiquadraticTensor contract_third_order(const ThirdOrderTensor& t) {
  const std::size_t p = t.p(), m = t.m(), n = t.n();
  Tensor4 gram(m, n);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          double s = 0.0;
          for (std::size_t k = 0; k < p; ++k) s += t.at(k, i1, j1) * t.at(k, i2, j2);
          gram.at(i1, j1, i2, j2) = s;
        }
  // The raw Gram is only pair-swap symmetric; projecting onto BQ(m, n) keeps
  // the quartic form (and hence positive semi-definiteness) unchanged.
  return symmetrize(gram);
}

namespace {

void check_same_shape(std::size_t ma, std::size_t na, std::size_t mb, std::size_t nb,
                      const char* what) {
  if (ma != mb || na != nb) throw DimensionMismatch(std::string(what) + ": shape mismatch");
}

double inner_flat(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double frob_flat(const std::vector<double>& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

}  // namespace

double inner(const Tensor4& a, const Tensor4& b) {
  check_same_shape(a.m(), a.n(), b.m(), b.n(), "inner");
  return inner_flat(a.entries(), b.entries());
}

double inner(const BiquadraticTensor& a, const BiquadraticTensor& b) {
  check_same_shape(a.m(), a.n(), b.m(), b.n(), "inner");
  return inner_flat(a.entries(), b.entries());
}

double frobenius(const Tensor4& a) { return frob_flat(a.entries()); }
double frobenius(const BiquadraticTensor& a) { return frob_flat(a.entries()); }

Tensor4 add(const Tensor4& a, const Tensor4& b) {
  check_same_shape(a.m(), a.n(), b.m(), b.n(), "add");
  Tensor4 out(a.m(), a.n());
  for (std::size_t i = 0; i < out.entries().size(); ++i)
    out.entries()[i] = a.entries()[i] + b.entries()[i];
  return out;
}

BiquadraticTensor add(const BiquadraticTensor& a, const BiquadraticTensor& b) {
  check_same_shape(a.m(), a.n(), b.m(), b.n(), "add");
  // Entrywise sums of bitwise-symmetric arrays stay bitwise symmetric.
  return BiquadraticTensor::from_representatives(
      a.m(), a.n(),
      [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        return a.at(i1, j1, i2, j2) + b.at(i1, j1, i2, j2);
      });
}

Tensor4 scale(const Tensor4& a, double c) {
  Tensor4 out(a.m(), a.n());
  for (std::size_t i = 0; i < out.entries().size(); ++i)
    out.entries()[i] = c * a.entries()[i];
  return out;
}

BiquadraticTensor scale(const BiquadraticTensor& a, double c) {
  return BiquadraticTensor::from_representatives(
      a.m(), a.n(),
      [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        return c * a.at(i1, j1, i2, j2);
      });
}

}  // namespace biquad
