#include "biquad/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "biquad/kernels.hpp"
#include "biquad/norms.hpp"

namespace biquad {

Tensor4 product(const BiquadraticTensor& a, const BiquadraticTensor& b) {
  if (a.m() != b.m() || a.n() != b.n())
    throw DimensionMismatch("product: operands must share (m, n)");
  return fold_square(matmul(flatten_square(a), flatten_square(b)), a.m(), a.n());
}

namespace {

Matrix inverse_flattening(const BiquadraticTensor& a) {
  const EigenDecomposition eig = symeig(flatten_square(a));
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (double l : eig.values) {
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  if (!(lo > 0.0) || hi / lo > 1e12)
    throw SingularFlattening("inverse: flattening condition estimate exceeds 1e12");

  // M^{-1} = V diag(1/lambda) V^T, filled one triangle at a time so the
  // matrix is bitwise symmetric before folding.
  const std::size_t nn = a.m() * a.n();
  SymMatrix minv(nn, nn);
  for (std::size_t r = 0; r < nn; ++r)
    for (std::size_t c = r; c < nn; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < nn; ++k)
        s += eig.vectors(r, k) * eig.vectors(c, k) / eig.values[k];
      minv(r, c) = s;
      minv(c, r) = s;
    }
  return minv;
}

}  // namespace

Tensor4 inverse(const BiquadraticTensor& a) {
  return fold_square(inverse_flattening(a), a.m(), a.n());
}

BiquadraticTensor inverse_in_bq(const BiquadraticTensor& a, double tol) {
  const Matrix minv = inverse_flattening(a);
  try {
    return unflatten_square(minv, a.m(), a.n(), tol * std::max(1.0, max_abs(minv)));
  } catch (const SymmetryViolation& e) {
    throw NotInvertibleInBQ(
        "inverse_in_bq: the matrix inverse of the flattening does not fold to a "
        "biquadratic tensor (deviation " +
        std::to_string(e.max_deviation()) + ")");
  }
}

namespace {

InequalityCheck make_check(std::string name, double left, double right, bool satisfied,
                           std::string note) {
  return {std::move(name), left, right, satisfied, std::move(note)};
}

// Bound directions valid for ANY fourth-order tensor, used for products and
// inverses that leave BQ(m, n).

// ||M(T)||_* <= ||T||_* for every T (the flattening lower bound).
double general_nuclear_lower(const Tensor4& t) {
  return matrix_nuclear_norm(flatten_square(t));
}

// ||T||_* <= min(m, n) ||M(T)||_*: expand T over the SVD of M(T); each
// singular vector folds to an m x n matrix of unit Frobenius norm whose
// nuclear norm is at most sqrt(min(m, n)).
double general_nuclear_upper(const Tensor4& t) {
  return static_cast<double>(std::min(t.m(), t.n())) *
         matrix_nuclear_norm(flatten_square(t));
}

// ||T||_S <= ||M(T)||_S for every T.
double general_spectral_upper(const Tensor4& t) {
  return matrix_spectral_norm(flatten_square(t));
}

// max |<T, x o y o x o y>| over unit pairs is a valid lower bound of the
// general spectral norm; projecting T onto BQ(m, n) preserves that quartic
// form, so the biquadratic search applies.
double general_spectral_lower(const Tensor4& t, const SolverConfig& config) {
  const BiquadraticTensor sym = symmetrize(t);
  if (frobenius(sym) == 0.0) return 0.0;
  const MEigenPair hi = largest_m_eigenvalue_envelope(sym, config);
  const MEigenPair lo = smallest_m_eigenvalue_envelope(sym, config);
  return std::max(std::abs(hi.lambda), std::abs(lo.lambda));
}

std::string deviation_note(const std::string& text, double deviation) {
  return text + " (fold symmetry deviation " + std::to_string(deviation) + ")";
}

}  // namespace

InequalityReport verify_inequalities(const BiquadraticTensor& a,
                                     const BiquadraticTensor& b,
                                     const SolverConfig& config, double tol) {
  InequalityReport report;
  const double mn = static_cast<double>(a.m() * a.n());

  const Tensor4 ab = product(a, b);
  const NormInterval nuc_a = nuclear_norm_interval(a);
  const NormInterval nuc_b = nuclear_norm_interval(b);
  const NormInterval spec_a = spectral_norm_interval(a, config);
  const NormInterval spec_b = spectral_norm_interval(b, config);
  const double nuc_ab_lower = general_nuclear_lower(ab);
  const double spec_ab_lower = general_spectral_lower(ab, config);

  // (a) ||AB||_* <= ||A||_* ||B||_*, checked as lower <= upper * upper.
  {
    const double right = nuc_a.upper * nuc_b.upper;
    report.checks.push_back(make_check(
        "nuclear-submultiplicative", nuc_ab_lower, right, nuc_ab_lower <= right + tol,
        deviation_note("lower(|AB|*) vs upper(|A|*)*upper(|B|*)",
                       symmetry_deviation(ab))));
  }

  bool invertible = false;
  double inv_nuclear_upper = 0.0, inv_spectral_upper = 0.0;
  std::string inv_note;
  try {
    const Tensor4 ainv = inverse(a);
    const double dev = symmetry_deviation(ainv);
    double scale = 0.0;
    for (double v : ainv.entries()) scale = std::max(scale, std::abs(v));
    if (dev <= tol * std::max(1.0, scale)) {
      // The inverse stays in BQ(m, n): use the tighter biquadratic bounds
      // (exact on the diagonal family).
      const BiquadraticTensor ainv_bq = validate(ainv, dev);
      inv_nuclear_upper = nuclear_norm_interval(ainv_bq).upper;
      inv_spectral_upper = spectral_norm_interval(ainv_bq, config).upper;
      inv_note = "inverse folds into BQ";
    } else {
      inv_nuclear_upper = general_nuclear_upper(ainv);
      inv_spectral_upper = general_spectral_upper(ainv);
      inv_note = deviation_note("general-tensor bounds", dev);
    }
    invertible = true;
  } catch (const SingularFlattening&) {
  }

  // (b) ||A||_* ||A^{-1}||_* >= mn, checked as upper * upper >= mn.
  if (invertible) {
    const double left = nuc_a.upper * inv_nuclear_upper;
    report.checks.push_back(
        make_check("inverse-nuclear-product", left, mn, left >= mn - tol,
                   "upper(|A|*)*upper(|Ainv|*) vs m*n; " + inv_note));
  } else {
    report.checks.push_back(
        make_check("inverse-nuclear-product", 0.0, mn, true, "skipped: A not invertible"));
  }

  // (c) ||A||_* ||A^{-1}||_S >= 1, checked as upper * upper >= 1.
  if (invertible) {
    const double left = nuc_a.upper * inv_spectral_upper;
    report.checks.push_back(make_check("inverse-spectral-product", left, 1.0,
                                       left >= 1.0 - tol,
                                       "upper(|A|*)*upper(|Ainv|_S) vs 1"));
  } else {
    report.checks.push_back(
        make_check("inverse-spectral-product", 0.0, 1.0, true, "skipped: A not invertible"));
  }

  // (d) ||AB||_S <= ||A||_* ||B||_S, checked as lower <= upper * upper.
  {
    const double right = nuc_a.upper * spec_b.upper;
    report.checks.push_back(make_check("mixed-nuclear-spectral-submultiplicative",
                                       spec_ab_lower, right,
                                       spec_ab_lower <= right + tol,
                                       "lower(|AB|_S) vs upper(|A|*)*upper(|B|_S)"));
  }

  // Recorded only: spectral-norm submultiplicativity can fail for these
  // products, so this row never contributes to all_sound.
  {
    const double right = spec_a.upper * spec_b.upper;
    report.checks.push_back(make_check(
        "spectral-submultiplicative-observed", spec_ab_lower, right, true,
        spec_ab_lower > right ? "observation: candidate submultiplicativity failure"
                              : "observation only; not asserted"));
  }

  report.all_sound = true;
  for (const InequalityCheck& c : report.checks) report.all_sound &= c.satisfied;
  return report;
}

}  // namespace biquad
