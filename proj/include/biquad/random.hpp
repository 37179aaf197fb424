#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "biquad/core.hpp"

namespace biquad {

/// Seeded generator used by solver starts, test instance generators and the
/// CLI.  All draws go through explicit bit-level constructions so a seed
/// pins the stream exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform in [-1, 1).
  double uniform_pm1() { return 2.0 * uniform() - 1.0; }

  /// Standard normal pair (Box-Muller).
  void normal_pair(double& a, double& b) {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    a = r * std::cos(6.283185307179586476925 * u2);
    b = r * std::sin(6.283185307179586476925 * u2);
  }

  /// Uniformly distributed unit vector.
  Vector unit_vector(std::size_t dim) {
    Vector v(dim);
    while (true) {
      for (std::size_t i = 0; i + 1 < dim; i += 2) normal_pair(v[i], v[i + 1]);
      if (dim % 2 == 1) {
        double a, b;
        normal_pair(a, b);
        v[dim - 1] = a;
      }
      const double nn = norm2(v);
      if (nn > 1e-6) {
        scale_in_place(v, 1.0 / nn);
        return v;
      }
    }
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

inline Tensor4 random_tensor4(Rng& rng, std::size_t m, std::size_t n) {
  Tensor4 t(m, n);
  for (double& v : t.entries()) v = rng.uniform_pm1();
  return t;
}

inline BiquadraticTensor random_biquadratic(Rng& rng, std::size_t m, std::size_t n) {
  return symmetrize(random_tensor4(rng, m, n));
}

inline ThirdOrderTensor random_third_order(Rng& rng, std::size_t p, std::size_t m,
                                           std::size_t n) {
  ThirdOrderTensor t(p, m, n);
  for (double& v : t.entries()) v = rng.uniform_pm1();
  return t;
}

}  // namespace biquad
