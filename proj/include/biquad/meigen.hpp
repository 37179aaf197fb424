#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "biquad/core.hpp"
#include "biquad/interval.hpp"

namespace biquad {

/// Controls for the multi-start alternating eigenvector solver.
/// `shift` left unset means the safe automatic value m*n*max|a|, which keeps
/// both contracted subproblem matrices positive semi-definite.
struct SolverConfig {
  std::size_t starts = 32;
  std::size_t max_iters = 4000;  // degenerate optima (flat PSD minima) converge slowly
  double tol = 1e-12;
  std::optional<double> shift;
  std::uint64_t seed = 0;
};

/// An approximate M-eigenpair: G(y) x = lambda x, H(x) y = lambda y with unit
/// x and y.  `residual` is the maximum violation of those equations and of
/// the unit constraints.
struct MEigenPair {
  double lambda = 0.0;
  Vector x, y;
  double residual = 0.0;
};

enum class PsdTag { CertifiedPSD, NotPSD, Unknown };

struct PsdWitness {
  Vector x, y;
  double value = 0.0;
};

/// Three-way positive semi-definiteness verdict.  CertifiedPSD is a proof
/// (the square flattening is PSD, which is sufficient); NotPSD carries a
/// witness pair with negative quartic form; Unknown reports the smallest
/// M-eigenvalue estimate the search reached.
struct PsdVerdict {
  PsdTag tag = PsdTag::Unknown;
  std::optional<PsdWitness> witness;
  double min_estimate = 0.0;
};

/// G(y)[i1][i2] = sum_{j1,j2} a[i1][j1][i2][j2] y[j1] y[j2]  (m x m).
SymMatrix contracted_matrix_y(const BiquadraticTensor& a, const Vector& y);

/// H(x)[j1][j2] = sum_{i1,i2} a[i1][j1][i2][j2] x[i1] x[i2]  (n x n).
SymMatrix contracted_matrix_x(const BiquadraticTensor& a, const Vector& x);

/// max(||G(y)x - lambda x||, ||H(x)y - lambda y||, |norm(x)-1|, |norm(y)-1|).
double m_residual(const BiquadraticTensor& a, double lambda, const Vector& x,
                  const Vector& y);

/// One alternating ascent from the given start: each half-step replaces x by
/// the top eigenvector of G(y) + shift*I (resp. y from H(x) + shift*I), so
/// the quartic form is nondecreasing per half-step.  When `trace` is given
/// it receives the objective value after every half-step.
MEigenPair alternating_maximize_from(const BiquadraticTensor& a,
                                     const SolverConfig& config, Vector x0,
                                     Vector y0, std::vector<double>* trace = nullptr,
                                     bool* converged = nullptr);

/// Multi-start maximization of the quartic form over the unit spheres.
/// Returns the best pair found; ties are broken deterministically.
/// Throws ConvergenceFailure (carrying the best iterate) only when no start
/// meets the residual target.
MEigenPair alternating_maximize(const BiquadraticTensor& a, const SolverConfig& config);

/// Heuristic lower/upper envelope searches for the extreme M-eigenvalues.
/// Global optimality is not certified.
MEigenPair largest_m_eigenvalue(const BiquadraticTensor& a, const SolverConfig& config);
MEigenPair smallest_m_eigenvalue(const BiquadraticTensor& a, const SolverConfig& config);

/// Envelope variants that return the best iterate instead of throwing on a
/// convergence failure.  The attained objective value is an exact function
/// evaluation either way, so one-sided bounds derived from it remain valid;
/// only the eigenpair residual contract is relinquished.
MEigenPair largest_m_eigenvalue_envelope(const BiquadraticTensor& a,
                                         const SolverConfig& config);
MEigenPair smallest_m_eigenvalue_envelope(const BiquadraticTensor& a,
                                          const SolverConfig& config);

/// lower = best |M-eigenvalue| found (valid lower bound of the spectral
/// norm), upper = ||M(A)||_S (valid upper bound).
NormInterval spectral_norm_interval(const BiquadraticTensor& a,
                                    const SolverConfig& config);

/// PSD classification per the flattening certificate and the search witness.
PsdVerdict psd_classify(const BiquadraticTensor& a, const SolverConfig& config);

}  // namespace biquad
