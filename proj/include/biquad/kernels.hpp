#pragma once

#include <cstddef>

#include "biquad/matrix.hpp"

namespace biquad {

/// Full spectrum of a symmetric matrix.  `values` are sorted by decreasing
/// absolute value (positive first on ties); `vectors` holds the matching
/// orthonormal eigenvectors as columns, so S == vectors * diag(values) * vectors^T.
struct EigenDecomposition {
  Vector values;
  Matrix vectors;
};

/// Thin SVD, A == U * diag(sigma) * V^T with k = min(rows, cols) columns.
/// sigma is nonnegative and descending; U and V have orthonormal columns
/// (deterministically completed when A is rank deficient).
struct SingularValueDecomposition {
  Matrix U;
  Vector sigma;
  Matrix V;
};

/// Cyclic Jacobi eigensolver.  Uses the upper triangle of S.
/// Throws ConvergenceFailure if the off-diagonal norm has not dropped below
/// 1e-10 * ||S||_F after 100 sweeps.
EigenDecomposition symeig(const SymMatrix& s);

/// One-sided Jacobi SVD (column orthogonalization), 100-sweep cap.
SingularValueDecomposition svd(const Matrix& a);

/// sigma_max(A).  Symmetric inputs take the eigenvalue path.
double matrix_spectral_norm(const Matrix& a);

/// sum of singular values.  Symmetric inputs take the eigenvalue path.
double matrix_nuclear_norm(const Matrix& a);

/// (P^T P)^{-1} P^T via the SVD.  Throws RankDeficient unless P has full
/// column rank at the default rank tolerance.
Matrix left_pseudoinverse(const Matrix& p);

/// Number of singular values above rank_tol_rel * sigma_max.
std::size_t numerical_rank(const Matrix& a, double rank_tol_rel);

/// Default relative rank cutoff: N * machine epsilon.
double default_rank_tol(std::size_t rows, std::size_t cols);

}  // namespace biquad
