#pragma once

#include <string>

namespace biquad {

/// Certified two-sided norm estimate.  `lower` comes from an evaluated
/// feasible point (or an exact identity), `upper` from a proved inequality;
/// the source strings say which.
struct NormInterval {
  double lower = 0.0;
  double upper = 0.0;
  std::string lower_source;
  std::string upper_source;
  bool exact = false;
};

namespace source {
inline constexpr const char* kMatrixNuclear = "matrix-nuclear";
inline constexpr const char* kMinMNMatrixNuclear = "min(m,n)·matrix-nuclear";
inline constexpr const char* kDecompositionSum = "decomposition-sum";
inline constexpr const char* kMEigenSearch = "m-eigen-search";
inline constexpr const char* kMatrixSpectral = "matrix-spectral";
inline constexpr const char* kDiagonalExact = "diagonal-exact";
}  // namespace source

}  // namespace biquad
