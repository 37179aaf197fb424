#include <doctest.h>

#include <cmath>

#include "biquad/decomp.hpp"
#include "biquad/meigen.hpp"
#include "biquad/oracle.hpp"
#include "biquad/random.hpp"

using namespace biquad;

TEST_CASE("quartic_extrema_grid: constant objectives") {
  oracle::GridSpec spec;
  spec.resolution = 60;
  spec.samples = 32;
  const oracle::GridExtrema eye = oracle::quartic_extrema_grid(identity(2, 2), spec);
  CHECK(eye.min == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(eye.max == doctest::Approx(1.0).epsilon(1e-9));

  const oracle::GridExtrema neg =
      oracle::quartic_extrema_grid(scale(identity(2, 2), -1.0), spec);
  CHECK(neg.min == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(neg.max == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("quartic_extrema_grid: diagonal maximum") {
  Matrix d(2, 2);
  d(0, 0) = 5.0;
  d(0, 1) = 1.0;
  d(1, 0) = 1.0;
  d(1, 1) = 1.0;
  oracle::GridSpec spec;
  spec.resolution = 360;
  const oracle::GridExtrema ex = oracle::quartic_extrema_grid(diagonal(2, 2, d), spec);
  CHECK(std::abs(ex.max - 5.0) <= 1e-3);
  // The refined argmax is an evaluated point, so it never overshoots.
  CHECK(ex.max <= 5.0 + 1e-12);
}

TEST_CASE("quartic_extrema_grid: guards") {
  oracle::GridSpec bad;
  bad.resolution = 4;
  CHECK_THROWS_AS(oracle::quartic_extrema_grid(identity(2, 2), bad), Error);

  oracle::GridSpec spec;
  CHECK_THROWS_AS(oracle::quartic_extrema_grid(identity(4, 2), spec), DimensionTooLarge);
}

TEST_CASE("naive twins: identity inputs and purity") {
  const BiquadraticTensor eye = identity(2, 2);
  const Tensor4 prod = oracle::naive_product(eye, eye);
  CHECK(prod.entries() == eye.entries());

  const Matrix flat = oracle::naive_flatten(eye);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(flat(i, j) == (i == j ? 1.0 : 0.0));

  Rng rng(121);
  const BiquadraticTensor a = random_biquadratic(rng, 2, 2);
  const Vector x = rng.unit_vector(2);
  const Vector y = rng.unit_vector(2);
  const double q1 = oracle::naive_quartic(a, x, y);
  const double q2 = oracle::naive_quartic(a, x, y);
  CHECK(q1 == q2);
}

TEST_CASE("naive twins: differential testing against production") {
  Rng rng(123);
  for (int rep = 0; rep < 20; ++rep) {
    const BiquadraticTensor a = random_biquadratic(rng, 2, 3);
    const BiquadraticTensor b = random_biquadratic(rng, 2, 3);
    const Vector x = rng.unit_vector(2);
    const Vector y = rng.unit_vector(3);

    CHECK(std::abs(oracle::naive_quartic(a, x, y) - quartic_form(a, x, y)) <= 1e-12);

    const Matrix flat = oracle::naive_flatten(a);
    const Matrix prod_flat = flatten_square(a);
    for (std::size_t i = 0; i < flat.data.size(); ++i)
      CHECK(flat.data[i] == prod_flat.data[i]);
  }
}

TEST_CASE("third_order_spectral_norm_brute: frozen values") {
  oracle::GridSpec spec;
  spec.resolution = 60;
  ThirdOrderTensor t(1, 1, 1);
  t.at(0, 0, 0) = 2.0;
  CHECK(oracle::third_order_spectral_norm_brute(t, spec) == doctest::Approx(2.0));

  const ThirdOrderTensor z(2, 2, 2);
  CHECK(oracle::third_order_spectral_norm_brute(z, spec) == 0.0);
}

TEST_CASE("third_order_spectral_norm_brute: cross-check with the Gram tensor") {
  Rng rng(125);
  oracle::GridSpec spec;
  spec.resolution = 90;
  spec.samples = 128;
  SolverConfig cfg;
  cfg.seed = 29;
  for (int rep = 0; rep < 5; ++rep) {
    const ThirdOrderTensor t = random_third_order(rng, 2, 2, 2);
    const double brute = oracle::third_order_spectral_norm_brute(t, spec);
    const double lam = largest_m_eigenvalue(contract_third_order(t), cfg).lambda;
    CHECK(std::abs(brute * brute - lam) <= 1e-3);
  }
}

TEST_CASE("oracle determinism: identical GridSpec, identical results") {
  Rng rng(127);
  const BiquadraticTensor a = random_biquadratic(rng, 2, 2);
  oracle::GridSpec spec;
  spec.resolution = 45;
  spec.samples = 64;
  spec.seed = 99;
  const oracle::GridExtrema e1 = oracle::quartic_extrema_grid(a, spec);
  const oracle::GridExtrema e2 = oracle::quartic_extrema_grid(a, spec);
  CHECK(e1.min == e2.min);
  CHECK(e1.max == e2.max);
  CHECK(e1.argmax_x == e2.argmax_x);
  CHECK(e1.argmin_y == e2.argmin_y);
}
