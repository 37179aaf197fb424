#include <doctest.h>

#include <cmath>

#include "biquad/algebra.hpp"
#include "biquad/kernels.hpp"
#include "biquad/oracle.hpp"
#include "biquad/random.hpp"

using namespace biquad;

namespace {

// Well-conditioned by construction: identity plus a perturbation scaled to
// spectral radius 0.4, so the flattening's eigenvalues stay in [0.6, 1.4].
BiquadraticTensor well_conditioned(Rng& rng, std::size_t m, std::size_t n) {
  const BiquadraticTensor r = random_biquadratic(rng, m, n);
  const double s = matrix_spectral_norm(flatten_square(r));
  return add(identity(m, n), scale(r, 0.4 / std::max(s, 1e-12)));
}

double identity_residual(const Matrix& m) {
  double fro = 0.0;
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) {
      const double d = m(i, j) - (i == j ? 1.0 : 0.0);
      fro += d * d;
    }
  return std::sqrt(fro);
}

}  // namespace

TEST_CASE("product: identity is the unit, exactly") {
  Rng rng(111);
  const BiquadraticTensor a = random_biquadratic(rng, 2, 3);
  const BiquadraticTensor eye = identity(2, 3);
  CHECK(product(a, eye).entries() == a.entries());
  CHECK(product(eye, a).entries() == a.entries());
  CHECK_THROWS_AS(product(a, identity(3, 2)), DimensionMismatch);
}

TEST_CASE("product: diagonal times diagonal is entrywise") {
  Matrix d(2, 2), e(2, 2);
  d(0, 0) = 2.0;
  d(0, 1) = -1.0;
  d(1, 0) = 3.0;
  d(1, 1) = 0.5;
  e(0, 0) = -4.0;
  e(0, 1) = 2.0;
  e(1, 0) = 1.0;
  e(1, 1) = 8.0;
  Matrix de(2, 2);
  for (std::size_t i = 0; i < 4; ++i) de.data[i] = d.data[i] * e.data[i];
  const Tensor4 got = product(diagonal(2, 2, d), diagonal(2, 2, e));
  CHECK(got.entries() == diagonal(2, 2, de).entries());
}

TEST_CASE("product: naive twin and flattening homomorphism") {
  Rng rng(113);
  for (int rep = 0; rep < 10; ++rep) {
    const BiquadraticTensor a = random_biquadratic(rng, 2, 2);
    const BiquadraticTensor b = random_biquadratic(rng, 2, 2);
    const Tensor4 ab = product(a, b);

    const Tensor4 naive = oracle::naive_product(a, b);
    for (std::size_t i = 0; i < ab.entries().size(); ++i)
      CHECK(std::abs(ab.entries()[i] - naive.entries()[i]) <= 1e-12);

    const Matrix lhs = flatten_square(ab);
    const Matrix rhs = matmul(flatten_square(a), flatten_square(b));
    for (std::size_t i = 0; i < lhs.data.size(); ++i)
      CHECK(lhs.data[i] == rhs.data[i]);
  }
}

TEST_CASE("product: generally leaves BQ(m, n)") {
  // The product of two symmetric matrices is not symmetric, and BQ(m, 1) is
  // exactly the symmetric matrices, so closure fails already at n = 1.
  Tensor4 ta(2, 1), tb(2, 1);
  ta.at(0, 0, 1, 0) = 1.0;
  ta.at(1, 0, 0, 0) = 1.0;  // A = [[0,1],[1,0]]
  tb.at(0, 0, 0, 0) = 1.0;
  tb.at(1, 0, 1, 0) = 2.0;  // B = diag(1, 2)
  const Tensor4 ab = product(validate(ta, 0.0), validate(tb, 0.0));
  CHECK(symmetry_deviation(ab) == 1.0);  // (AB)_{01} = 2 vs (AB)_{10} = 1

  // The quartic form of the symmetrized product matches the raw product.
  Rng rng(114);
  const BiquadraticTensor a = random_biquadratic(rng, 2, 2);
  const BiquadraticTensor b = random_biquadratic(rng, 2, 2);
  const Tensor4 raw = product(a, b);
  const BiquadraticTensor sym = symmetrize(raw);
  for (int k = 0; k < 10; ++k) {
    const Vector x = rng.unit_vector(2);
    const Vector y = rng.unit_vector(2);
    CHECK(std::abs(oracle::naive_quartic(raw, x, y) - quartic_form(sym, x, y)) <= 1e-12);
  }
}

TEST_CASE("inverse: identity and diagonal are exact") {
  const Tensor4 inv_eye = inverse(identity(2, 2));
  CHECK(inv_eye.entries() == identity(2, 2).entries());

  Matrix d(2, 2);
  d(0, 0) = 2.0;
  d(0, 1) = -0.5;
  d(1, 0) = 4.0;
  d(1, 1) = 1.25;
  Matrix dinv(2, 2);
  for (std::size_t i = 0; i < 4; ++i) dinv.data[i] = 1.0 / d.data[i];
  const Tensor4 got = inverse(diagonal(2, 2, d));
  for (std::size_t i = 0; i < got.entries().size(); ++i)
    CHECK(got.entries()[i] == doctest::Approx(diagonal(2, 2, dinv).entries()[i]));

  Matrix singular(2, 2);
  singular(0, 0) = 1.0;  // other diagonal entries are zero
  CHECK_THROWS_AS(inverse(diagonal(2, 2, singular)), SingularFlattening);
}

TEST_CASE("inverse: two-sided round trip through the flattening") {
  Rng rng(115);
  for (int rep = 0; rep < 6; ++rep) {
    const BiquadraticTensor a = well_conditioned(rng, 2, 2);
    const Tensor4 ainv = inverse(a);
    CHECK(identity_residual(matmul(flatten_square(a), flatten_square(ainv))) <= 1e-8);
    CHECK(identity_residual(matmul(flatten_square(ainv), flatten_square(a))) <= 1e-8);
  }
}

TEST_CASE("inverse_in_bq: diagonal family stays closed, generic does not") {
  Matrix d(2, 2);
  d(0, 0) = 2.0;
  d(0, 1) = -0.5;
  d(1, 0) = 4.0;
  d(1, 1) = 1.25;
  const BiquadraticTensor diag = diagonal(2, 2, d);
  const BiquadraticTensor dinv = inverse_in_bq(diag);
  CHECK(dinv.at(0, 0, 0, 0) == doctest::Approx(0.5));
  CHECK(dinv.at(1, 0, 1, 0) == doctest::Approx(0.25));

  // Involution on the closed family.
  const BiquadraticTensor back = inverse_in_bq(dinv);
  for (std::size_t i = 0; i < back.entries().size(); ++i)
    CHECK(back.entries()[i] == doctest::Approx(diag.entries()[i]).epsilon(1e-6));

  // A generic well-conditioned tensor has a matrix inverse whose fold
  // violates the biquadratic symmetry, so the BQ-constrained inverse refuses.
  Rng rng(116);
  const BiquadraticTensor a = well_conditioned(rng, 2, 2);
  CHECK_THROWS_AS(inverse_in_bq(a, 1e-8), NotInvertibleInBQ);
}

TEST_CASE("verify_inequalities: identity pair reproduces the exact values") {
  SolverConfig cfg;
  cfg.seed = 17;
  const BiquadraticTensor eye = identity(2, 2);
  const InequalityReport r = verify_inequalities(eye, eye, cfg);
  REQUIRE(r.checks.size() == 5);
  CHECK(r.all_sound);

  CHECK(r.checks[0].name == "nuclear-submultiplicative");
  CHECK(r.checks[0].left == doctest::Approx(4.0));
  CHECK(r.checks[0].right == doctest::Approx(16.0));

  CHECK(r.checks[1].name == "inverse-nuclear-product");
  CHECK(r.checks[1].left == doctest::Approx(16.0));
  CHECK(r.checks[1].right == doctest::Approx(4.0));

  CHECK(r.checks[2].name == "inverse-spectral-product");
  CHECK(r.checks[2].left == doctest::Approx(4.0));
  CHECK(r.checks[2].right == doctest::Approx(1.0));

  CHECK(r.checks[3].name == "mixed-nuclear-spectral-submultiplicative");
  CHECK(r.checks[3].left == doctest::Approx(1.0));
  CHECK(r.checks[3].right == doctest::Approx(4.0));
}

TEST_CASE("verify_inequalities: diagonal pair uses exact diagonal norms") {
  SolverConfig cfg;
  cfg.seed = 19;
  Matrix d(2, 2), e(2, 2);
  d(0, 0) = 1.0;
  d(0, 1) = -2.0;
  d(1, 0) = 0.5;
  d(1, 1) = 3.0;
  e(0, 0) = -1.5;
  e(0, 1) = 1.0;
  e(1, 0) = 2.0;
  e(1, 1) = 0.25;
  const InequalityReport r =
      verify_inequalities(diagonal(2, 2, d), diagonal(2, 2, e), cfg);
  CHECK(r.all_sound);
  // |AB|_* is exact for the diagonal product: sum |d_ij e_ij| = 5.25.
  CHECK(r.checks[0].left == doctest::Approx(5.25));
  CHECK(r.checks[0].right == doctest::Approx(6.5 * 4.75));
}

TEST_CASE("verify_inequalities: random battery is sound") {
  Rng rng(117);
  SolverConfig cfg;
  cfg.seed = 23;
  cfg.starts = 16;
  for (int rep = 0; rep < 10; ++rep) {
    const BiquadraticTensor a = random_biquadratic(rng, 2, 2);
    const BiquadraticTensor b = random_biquadratic(rng, 2, 2);
    const InequalityReport r = verify_inequalities(a, b, cfg);
    CHECK(r.all_sound);
  }
}
