#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "biquad/core.hpp"

namespace biquad {

/// One biquadratic rank-one term coef * x o y o x o y with unit x, y.
/// Both vectors are sign-normalized (first significant component positive);
/// flipping either sign leaves the term unchanged, so no information is lost.
struct RankOneTerm {
  double coef = 0.0;
  Vector x, y;
};

struct BQDecomposition {
  std::size_t m = 0, n = 0;
  std::vector<RankOneTerm> terms;
  double reconstruction_error = 0.0;  // relative Frobenius
};

enum class TuckerKind { Orthonormal, Independent };

/// Tucker form A = core x1 P x2 Q x3 P x4 Q with biquadratic core.
struct TuckerForm {
  BiquadraticTensor core;
  Matrix P, Q;
  TuckerKind kind = TuckerKind::Orthonormal;
  double reconstruction_error = 0.0;  // relative Frobenius vs. the source tensor
  bool exact = false;                  // reconstruction_error <= 1e-8
};

/// Two-sided transport report: a decomposition of the core pushed forward
/// through (P, Q) must rebuild the ambient tensor, and a decomposition of the
/// ambient tensor pulled back through the left inverses must rebuild the core.
struct BrPreservationReport {
  std::size_t terms_ambient = 0;
  std::size_t terms_core = 0;
  double push_forward_error = 0.0;
  double pull_back_error = 0.0;
  bool push_forward_ok = false;
  bool pull_back_ok = false;
  bool ok = false;
};

/// Constructive biquadratic rank-one decomposition: SVD of the pair
/// flattening, symmetric folds of the singular vectors, eigendecomposition of
/// each fold.  Terms with |coef| <= drop_tol * ||A||_F are pruned.
/// The term count never exceeds mn * min(m(m+1)/2, n(n+1)/2).
BQDecomposition bq_rank_one_decompose(const BiquadraticTensor& a,
                                      double drop_tol = 1e-12);

/// Sum of the terms; always biquadratic.
BiquadraticTensor reconstruct(const BQDecomposition& d);

/// Factor matrices X (m x r), Y (n x r) with columns |coef|^(1/2) * x
/// and |coef|^(1/2) * y.  rank(X) and rank(Y) equal the Tucker ranks.
std::pair<Matrix, Matrix> factor_matrices(const BQDecomposition& d);

/// Ranks of the mode-1 and mode-2 flattenings (relative tolerance).
std::pair<std::size_t, std::size_t> tucker_ranks(const BiquadraticTensor& a,
                                                 double rank_tol = 1e-10);

/// Orthonormal biquadratic Tucker decomposition: P and Q are leading left
/// singular vectors of the mode flattenings; the core is the two-factor
/// orthogonal compression.  Reconstruction is exact when d1 >= R1, d2 >= R2.
TuckerForm hosvd(const BiquadraticTensor& a, std::size_t d1, std::size_t d2);

/// Core for given full-column-rank factors via left pseudoinverses.
/// Reconstruction error reports how far A is from the factors' range.
TuckerForm independent_core(const BiquadraticTensor& a, const Matrix& p,
                            const Matrix& q);

/// out = B x1 P x2 Q x3 P x4 Q where P maps core index 1/3 and Q maps core
/// index 2/4; factors are indexed (output dim, core dim).
BiquadraticTensor mode_multiply(const BiquadraticTensor& b, const Matrix& p,
                                const Matrix& q);

BiquadraticTensor tucker_reconstruct(const TuckerForm& t);

/// Validates the constructive biquadratic-rank preservation argument on a
/// concrete independent Tucker pair.
BrPreservationReport br_preservation_check(const BiquadraticTensor& a,
                                           const Matrix& p, const Matrix& q,
                                           double tol = 1e-8);

}  // namespace biquad
