#include "biquad/norms.hpp"

#include <algorithm>
#include <cmath>

#include "biquad/decomp.hpp"
#include "biquad/kernels.hpp"

namespace biquad {

std::optional<double> diagonal_nuclear_exact(const BiquadraticTensor& a) {
  const std::size_t m = a.m(), n = a.n();
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          if (i1 == i2 && j1 == j2) continue;
          if (std::abs(a.at(i1, j1, i2, j2)) > 1e-12) return std::nullopt;
        }
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) sum += std::abs(a.at(i, j, i, j));
  return sum;
}

NormInterval nuclear_norm_interval(const BiquadraticTensor& a) {
  NormInterval iv;
  if (const auto diag = diagonal_nuclear_exact(a)) {
    iv.lower = iv.upper = *diag;
    iv.lower_source = source::kDiagonalExact;
    iv.upper_source = source::kDiagonalExact;
    iv.exact = true;
    return iv;
  }

  const double matrix_lower = matrix_nuclear_norm(flatten_square(a));
  iv.lower = matrix_lower;
  iv.lower_source = source::kMatrixNuclear;

  const double sandwich =
      static_cast<double>(std::min(a.m(), a.n())) * matrix_lower;
  double decomposition_sum = 0.0;
  for (const RankOneTerm& t : bq_rank_one_decompose(a).terms)
    decomposition_sum += std::abs(t.coef);

  if (decomposition_sum <= sandwich) {
    iv.upper = decomposition_sum;
    iv.upper_source = source::kDecompositionSum;
  } else {
    iv.upper = sandwich;
    iv.upper_source = source::kMinMNMatrixNuclear;
  }
  if (iv.lower > iv.upper + 1e-10 * std::max(1.0, iv.upper))
    throw Error("nuclear_norm_interval: lower bound exceeds upper bound (kernel bug)");
  iv.exact = iv.upper - iv.lower <= 1e-10 * std::max(1.0, iv.upper);
  return iv;
}

NormInterval spectral_norm_interval_norms(const BiquadraticTensor& a,
                                          const SolverConfig& config) {
  return spectral_norm_interval(a, config);
}

}  // namespace biquad
