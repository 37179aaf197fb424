#pragma once

#include <string>
#include <vector>

#include "biquad/core.hpp"
#include "biquad/meigen.hpp"

namespace biquad {

struct InequalityCheck {
  std::string name;
  double left = 0.0;
  double right = 0.0;
  bool satisfied = true;
  std::string note;
};

/// One record per checked inequality; `all_sound` is their conjunction.
/// Every asserted check is oriented through certified bound directions so a
/// failure indicates a library bug, never an open mathematical question.
struct InequalityReport {
  std::vector<InequalityCheck> checks;
  bool all_sound = true;
};

/// Tensor product C = A B, c[i1][j1][i2][j2] = sum a[i1][j1][i3][j3] b[i3][j3][i2][j2],
/// computed so that flatten_square(C) = flatten_square(A) * flatten_square(B)
/// holds bit for bit.  The result is a general fourth-order tensor: despite
/// the common closure claim, the product of two biquadratic tensors need not
/// be biquadratic (for n = 1 this is the product of two symmetric matrices).
/// It is biquadratic in special cases, e.g. when one factor is the identity
/// or both are diagonal.
Tensor4 product(const BiquadraticTensor& a, const BiquadraticTensor& b);

/// Inverse through the flattening: folds M(A)^{-1} back to a tensor, so
/// product round trips to the identity exactly up to conditioning.  Throws
/// SingularFlattening when the flattening's condition estimate exceeds 1e12.
Tensor4 inverse(const BiquadraticTensor& a);

/// The inverse constrained to BQ(m, n): validates the fold of M(A)^{-1} at
/// `tol` (relative) and orbit-averages it.  Throws NotInvertibleInBQ when the
/// fold is not biquadratic within tolerance — which is the generic outcome;
/// diagonal tensors and perturbations commuting with the swap structure stay
/// inside BQ.
BiquadraticTensor inverse_in_bq(const BiquadraticTensor& a, double tol = 1e-8);

/// Norm inequality battery over (A, B): submultiplicativity of the nuclear
/// norm on products, the two inverse lower bounds, the mixed nuclear/spectral
/// product bound, and a recorded (never asserted) probe of spectral-norm
/// submultiplicativity.  Product and inverse norms use general-tensor bound
/// directions valid outside BQ(m, n).
InequalityReport verify_inequalities(const BiquadraticTensor& a,
                                     const BiquadraticTensor& b,
                                     const SolverConfig& config, double tol = 1e-8);

}  // namespace biquad
