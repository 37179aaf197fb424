#include <doctest.h>

#include <cmath>

#include "biquad/kernels.hpp"
#include "biquad/random.hpp"

using namespace biquad;

namespace {

Matrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (double& v : m.data) v = rng.uniform_pm1();
  return m;
}

SymMatrix random_symmetric(Rng& rng, std::size_t n) {
  SymMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = rng.uniform_pm1();
      s(i, j) = v;
      s(j, i) = v;
    }
  return s;
}

double reconstruction_residual(const SymMatrix& s, const EigenDecomposition& e) {
  const std::size_t n = s.rows;
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += e.vectors(i, k) * e.values[k] * e.vectors(j, k);
      const double d = acc - s(i, j);
      err += d * d;
    }
  return std::sqrt(err);
}

double svd_residual(const Matrix& a, const SingularValueDecomposition& s) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < s.sigma.size(); ++k)
        acc += s.U(i, k) * s.sigma[k] * s.V(j, k);
      const double d = acc - a(i, j);
      err += d * d;
    }
  return std::sqrt(err);
}

double orthonormality_residual(const Matrix& u) {
  double worst = 0.0;
  for (std::size_t p = 0; p < u.cols; ++p)
    for (std::size_t q = 0; q <= p; ++q) {
      double d = 0.0;
      for (std::size_t i = 0; i < u.rows; ++i) d += u(i, p) * u(i, q);
      worst = std::max(worst, std::abs(d - (p == q ? 1.0 : 0.0)));
    }
  return worst;
}

}  // namespace

TEST_CASE("symeig: identity and axis-aligned spectra") {
  const auto eye = symeig(Matrix::identity(4));
  for (double v : eye.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  SymMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  const auto e = symeig(d);
  CHECK(e.values[0] == doctest::Approx(3.0));
  CHECK(e.values[1] == doctest::Approx(-1.0));
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(1, 1)) == doctest::Approx(1.0));
}

TEST_CASE("symeig: trace identity, reconstruction and orthonormality") {
  Rng rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    const SymMatrix s = random_symmetric(rng, 6);
    const auto e = symeig(s);
    double tr = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < 6; ++i) tr += s(i, i);
    for (double v : e.values) sum += v;
    CHECK(std::abs(tr - sum) <= 1e-10);
    CHECK(reconstruction_residual(s, e) <= 1e-10 * std::max(1.0, frobenius_norm(s)));
    CHECK(orthonormality_residual(e.vectors) <= 1e-12);
  }
}

TEST_CASE("symeig: values sorted by descending magnitude") {
  Rng rng(3);
  const auto e = symeig(random_symmetric(rng, 5));
  for (std::size_t k = 0; k + 1 < e.values.size(); ++k)
    CHECK(std::abs(e.values[k]) >= std::abs(e.values[k + 1]) - 1e-15);
}

TEST_CASE("svd: zero matrix and orthonormal columns") {
  const auto z = svd(Matrix(3, 2));
  CHECK(z.sigma[0] == 0.0);
  CHECK(z.sigma[1] == 0.0);
  CHECK(orthonormality_residual(z.U) <= 1e-12);
  CHECK(orthonormality_residual(z.V) <= 1e-12);

  Matrix q(3, 2);
  q(0, 0) = 1.0;
  q(1, 1) = 1.0;
  const auto s = svd(q);
  CHECK(s.sigma[0] == doctest::Approx(1.0));
  CHECK(s.sigma[1] == doctest::Approx(1.0));
}

TEST_CASE("svd: Frobenius identity and reconstruction, both orientations") {
  Rng rng(7);
  for (const auto& [r, c] : {std::pair<std::size_t, std::size_t>{4, 5}, {5, 4}, {6, 3}}) {
    const Matrix a = random_matrix(rng, r, c);
    const auto s = svd(a);
    double fro2 = 0.0, sig2 = 0.0;
    for (double v : a.data) fro2 += v * v;
    for (double v : s.sigma) sig2 += v * v;
    CHECK(std::abs(fro2 - sig2) <= 1e-10 * std::max(1.0, fro2));
    CHECK(svd_residual(a, s) <= 1e-10 * std::max(1.0, frobenius_norm(a)));
    CHECK(orthonormality_residual(s.U) <= 1e-12);
    CHECK(orthonormality_residual(s.V) <= 1e-12);
  }
}

TEST_CASE("svd: rank-deficient input still yields orthonormal factors") {
  Rng rng(9);
  const Vector u = rng.unit_vector(4);
  const Vector v = rng.unit_vector(3);
  Matrix a(4, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) a(i, j) = 2.0 * u[i] * v[j];
  const auto s = svd(a);
  CHECK(s.sigma[0] == doctest::Approx(2.0));
  CHECK(s.sigma[1] <= 1e-12);
  CHECK(orthonormality_residual(s.U) <= 1e-12);
  CHECK(svd_residual(a, s) <= 1e-10);
  CHECK(numerical_rank(a, 1e-10) == 1);
}

TEST_CASE("matrix norms: identity and diagonal") {
  CHECK(matrix_spectral_norm(Matrix::identity(5)) == doctest::Approx(1.0));
  CHECK(matrix_nuclear_norm(Matrix::identity(5)) == doctest::Approx(5.0));

  Matrix d(3, 3);
  d(0, 0) = -2.0;
  d(1, 1) = 0.5;
  d(2, 2) = 1.0;
  CHECK(matrix_nuclear_norm(d) == doctest::Approx(3.5));
  CHECK(matrix_spectral_norm(d) == doctest::Approx(2.0));
}

TEST_CASE("matrix norms: nuclear dominates spectral") {
  Rng rng(11);
  for (int rep = 0; rep < 8; ++rep) {
    const Matrix a = random_matrix(rng, 4, 6);
    const double sp = matrix_spectral_norm(a);
    const double nu = matrix_nuclear_norm(a);
    CHECK(nu >= sp - 1e-12);
    CHECK(sp >= 0.0);
  }
}

TEST_CASE("left_pseudoinverse: P_hat * P = I for full column rank") {
  Rng rng(13);
  const Matrix p = random_matrix(rng, 5, 3);
  const Matrix p_hat = left_pseudoinverse(p);
  const Matrix prod = matmul(p_hat, p);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("left_pseudoinverse: rank-deficient input throws") {
  Matrix p(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    p(i, 0) = 1.0;
    p(i, 1) = 2.0;  // second column is a multiple of the first
  }
  CHECK_THROWS_AS(left_pseudoinverse(p), RankDeficient);
}
