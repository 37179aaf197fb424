#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace biquad {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incompatible shapes or index ranges.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Input violates the biquadratic index symmetry beyond the allowed tolerance.
class SymmetryViolation : public Error {
 public:
  SymmetryViolation(const std::string& what, double max_deviation)
      : Error(what), max_deviation_(max_deviation) {}
  double max_deviation() const { return max_deviation_; }

 private:
  double max_deviation_;
};

/// An iterative kernel hit its iteration cap without meeting its residual
/// target.  For the m-eigenvalue solver the best iterate found is attached.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
  ConvergenceFailure(const std::string& what, double lambda, std::vector<double> x,
                     std::vector<double> y, double residual)
      : Error(what),
        has_iterate(true),
        lambda(lambda),
        x(std::move(x)),
        y(std::move(y)),
        residual(residual) {}

  bool has_iterate = false;
  double lambda = 0.0;
  std::vector<double> x, y;
  double residual = 0.0;
};

/// Pseudoinverse (or a factor-matrix operation) requires full column rank.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// The square flattening is numerically singular (condition estimate too large).
class SingularFlattening : public Error {
 public:
  using Error::Error;
};

/// The matrix inverse of the flattening exists but does not fold back to a
/// biquadratic tensor within tolerance.
class NotInvertibleInBQ : public Error {
 public:
  using Error::Error;
};

/// Brute-force oracle invoked beyond its cost guard.
class DimensionTooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace biquad
