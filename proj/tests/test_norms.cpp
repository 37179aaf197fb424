#include <doctest.h>

#include <cmath>

#include "biquad/decomp.hpp"
#include "biquad/kernels.hpp"
#include "biquad/norms.hpp"
#include "biquad/oracle.hpp"
#include "biquad/random.hpp"

using namespace biquad;

TEST_CASE("nuclear_norm_interval: identity is exactly mn") {
  for (const auto& [m, n] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {1, 4}}) {
    const NormInterval iv = nuclear_norm_interval(identity(m, n));
    CHECK(iv.lower == doctest::Approx(static_cast<double>(m * n)));
    CHECK(iv.upper == doctest::Approx(static_cast<double>(m * n)));
    CHECK(iv.exact);
    CHECK(iv.lower_source == std::string("diagonal-exact"));
  }
}

TEST_CASE("nuclear_norm_interval: diagonal tensors collapse to the absolute sum") {
  Matrix d(2, 3);
  d(0, 0) = -1.0;
  d(0, 1) = 2.0;
  d(0, 2) = 0.0;
  d(1, 0) = 0.5;
  d(1, 1) = -0.25;
  d(1, 2) = 4.0;
  const NormInterval iv = nuclear_norm_interval(diagonal(2, 3, d));
  CHECK(iv.lower == doctest::Approx(7.75));
  CHECK(iv.upper == doctest::Approx(7.75));
  CHECK(iv.exact);
}

TEST_CASE("nuclear_norm_interval: sandwich on random instances") {
  Rng rng(101);
  for (int rep = 0; rep < 8; ++rep) {
    const BiquadraticTensor a = random_biquadratic(rng, 2, 2);
    const NormInterval iv = nuclear_norm_interval(a);
    CHECK(iv.lower <= iv.upper + 1e-10);
    const double matrix_lower = matrix_nuclear_norm(flatten_square(a));
    CHECK(iv.upper <= 2.0 * matrix_lower + 1e-8);  // min(m,n) = 2

    // The flattening lower bound never exceeds the decomposition mass.
    double mass = 0.0;
    for (const RankOneTerm& t : bq_rank_one_decompose(a).terms) mass += std::abs(t.coef);
    CHECK(matrix_lower <= mass + 1e-8);
  }
}

TEST_CASE("spectral interval via norms: identity and scaled rank-one") {
  SolverConfig cfg;
  cfg.seed = 3;
  const NormInterval eye = spectral_norm_interval_norms(identity(3, 2), cfg);
  CHECK(eye.lower == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(eye.upper == doctest::Approx(1.0).epsilon(1e-10));

  Rng rng(103);
  const BiquadraticTensor c =
      scale(rank_one(rng.unit_vector(2), rng.unit_vector(2)), -2.5);
  const NormInterval iv = spectral_norm_interval_norms(c, cfg);
  CHECK(iv.lower == doctest::Approx(2.5).epsilon(1e-10));
  CHECK(iv.upper == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("spectral interval: oracle agreement on random instances") {
  Rng rng(105);
  SolverConfig cfg;
  cfg.seed = 11;
  oracle::GridSpec spec;
  spec.resolution = 180;
  for (int rep = 0; rep < 5; ++rep) {
    const BiquadraticTensor a = random_biquadratic(rng, 2, 2);
    const NormInterval iv = spectral_norm_interval_norms(a, cfg);
    const oracle::GridExtrema ex = oracle::quartic_extrema_grid(a, spec);
    CHECK(std::abs(iv.lower - std::max(std::abs(ex.min), std::abs(ex.max))) <= 1e-4);
  }
}

TEST_CASE("diagonal_nuclear_exact: hits and misses") {
  CHECK(diagonal_nuclear_exact(identity(3, 2)) == 6.0);

  Matrix d(2, 2);
  d(0, 0) = -1.0;
  d(0, 1) = 2.0;
  d(1, 0) = 0.0;
  d(1, 1) = 3.0;
  CHECK(diagonal_nuclear_exact(diagonal(2, 2, d)) == 6.0);

  const Vector x = {0.6, 0.8};
  const Vector y = {0.8, 0.6};
  CHECK(!diagonal_nuclear_exact(rank_one(x, y)).has_value());
}

TEST_CASE("duality sanity: |<A, B>| bounded by the nuclear upper bound") {
  Rng rng(107);
  SolverConfig cfg;
  cfg.seed = 13;
  for (int rep = 0; rep < 5; ++rep) {
    const BiquadraticTensor a = random_biquadratic(rng, 2, 2);
    BiquadraticTensor b = random_biquadratic(rng, 2, 2);
    const NormInterval sb = spectral_norm_interval_norms(b, cfg);
    if (sb.upper == 0.0) continue;
    b = scale(b, 1.0 / sb.upper);  // now upper(|B|_S) <= 1
    const NormInterval na = nuclear_norm_interval(a);
    CHECK(std::abs(inner(a, b)) <= na.upper + 1e-8);
  }
}
