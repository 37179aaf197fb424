#pragma once

#include <cstdint>

#include "biquad/core.hpp"

// Brute-force references for differential testing.  Everything here is a
// literal transcription of the defining formulas, kept independent of the
// production code paths it is used to check.  Small dimensions only.
namespace biquad::oracle {

struct GridSpec {
  std::size_t resolution = 90;  // points per angular coordinate, >= 8
  std::size_t samples = 256;    // extra random unit-pair probes
  std::uint64_t seed = 0;
};

struct GridExtrema {
  double min = 0.0;
  double max = 0.0;
  Vector argmin_x, argmin_y;
  Vector argmax_x, argmax_y;
};

/// Extrema of the quartic form over the product of unit spheres: angular grid
/// plus random probes, each followed by deterministic local refinement.
/// Results are valid bounds (every reported value is an evaluated point).
/// Throws DimensionTooLarge beyond m, n <= 3.
GridExtrema quartic_extrema_grid(const BiquadraticTensor& a, const GridSpec& spec);

/// max |<T, z o x o y>| over unit z, x, y; z is eliminated analytically,
/// x and y are searched like quartic_extrema_grid.  p, m, n <= 3.
double third_order_spectral_norm_brute(const ThirdOrderTensor& t, const GridSpec& spec);

// Quadruple-loop twins of the production operations.

double naive_quartic(const Tensor4& t, const Vector& x, const Vector& y);
double naive_quartic(const BiquadraticTensor& a, const Vector& x, const Vector& y);

/// c[i1][j1][i2][j2] = sum_{i3,j3} a[i1][j1][i3][j3] b[i3][j3][i2][j2],
/// returned unsymmetrized for entrywise comparison.
Tensor4 naive_product(const BiquadraticTensor& a, const BiquadraticTensor& b);

/// Eight-index loop of B x1 P x2 Q x3 P x4 Q.
Tensor4 naive_mode_multiply(const BiquadraticTensor& b, const Matrix& p, const Matrix& q);

/// Square flattening by explicit index arithmetic.
Matrix naive_flatten(const BiquadraticTensor& a);

}  // namespace biquad::oracle
