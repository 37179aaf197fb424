#pragma once

#include <optional>

#include "biquad/core.hpp"
#include "biquad/interval.hpp"
#include "biquad/meigen.hpp"

namespace biquad {

/// Certified nuclear norm interval:
///   lower = ||M(A)||_*   (the flattening bound),
///   upper = min( min(m,n) * ||M(A)||_*, sum |coef| over the constructive
///                rank-one decomposition ),
/// collapsing to the exact value sum |a_ijij| for diagonal tensors.
NormInterval nuclear_norm_interval(const BiquadraticTensor& a);

/// Spectral norm interval from the m-eigen searches (lower) and the
/// flattening spectral norm (upper).
NormInterval spectral_norm_interval_norms(const BiquadraticTensor& a,
                                          const SolverConfig& config);

/// sum |a[i][j][i][j]| when every off-diagonal orbit is below 1e-12 in
/// magnitude; nullopt otherwise.
std::optional<double> diagonal_nuclear_exact(const BiquadraticTensor& a);

}  // namespace biquad
