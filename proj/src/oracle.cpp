#include "biquad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "biquad/random.hpp"

namespace biquad::oracle {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

void check_spec(const GridSpec& spec) {
  if (spec.resolution < 8) throw Error("GridSpec: resolution must be at least 8");
}

Vector from_angles(std::size_t dim, const Vector& ang) {
  switch (dim) {
    case 1:
      return {1.0};
    case 2:
      return {std::cos(ang[0]), std::sin(ang[0])};
    case 3: {
      const double st = std::sin(ang[0]);
      return {st * std::cos(ang[1]), st * std::sin(ang[1]), std::cos(ang[0])};
    }
    default:
      throw DimensionTooLarge("oracle: sphere grids stop at dimension 3");
  }
}

Vector to_angles(const Vector& v) {
  switch (v.size()) {
    case 1:
      return {};
    case 2:
      return {std::atan2(v[1], v[0])};
    case 3:
      return {std::acos(std::clamp(v[2], -1.0, 1.0)), std::atan2(v[1], v[0])};
    default:
      throw DimensionTooLarge("oracle: sphere grids stop at dimension 3");
  }
}

std::vector<Vector> sphere_grid(std::size_t dim, std::size_t res) {
  std::vector<Vector> pts;
  switch (dim) {
    case 1:
      pts.push_back({1.0});
      break;
    case 2:
      for (std::size_t k = 0; k < res; ++k)
        pts.push_back(from_angles(2, {kTwoPi * static_cast<double>(k) /
                                      static_cast<double>(res)}));
      break;
    case 3:
      for (std::size_t k = 0; k <= res; ++k) {
        const double theta =
            0.5 * kTwoPi * static_cast<double>(k) / static_cast<double>(res);
        for (std::size_t l = 0; l < res; ++l) {
          const double phi = kTwoPi * static_cast<double>(l) / static_cast<double>(res);
          pts.push_back(from_angles(3, {theta, phi}));
        }
      }
      break;
    default:
      throw DimensionTooLarge("oracle: sphere grids stop at dimension 3");
  }
  return pts;
}

using Objective = std::function<double(const Vector&, const Vector&)>;

// Cyclic coordinate descent on the joint angle vector, step halving from the
// grid spacing down to ~1e-10.  Every accepted point is an evaluated feasible
// point, so refined extrema remain valid one-sided bounds.
void refine(std::size_t m, std::size_t n, Vector& x, Vector& y, double& value,
            bool maximize, double initial_step, const Objective& f) {
  Vector ax = to_angles(x), ay = to_angles(y);
  const std::size_t total = ax.size() + ay.size();
  if (total == 0) return;
  auto eval = [&](const Vector& a, const Vector& b) {
    return f(from_angles(m, a), from_angles(n, b));
  };
  double step = initial_step;
  for (int guard = 0; step > 1e-10 && guard < 100000; ++guard) {
    bool improved = false;
    for (std::size_t k = 0; k < total; ++k) {
      Vector& host = k < ax.size() ? ax : ay;
      const std::size_t idx = k < ax.size() ? k : k - ax.size();
      for (const double delta : {step, -step}) {
        const double saved = host[idx];
        host[idx] = saved + delta;
        const double candidate = eval(ax, ay);
        const bool better = maximize ? candidate > value : candidate < value;
        if (better) {
          value = candidate;
          improved = true;
        } else {
          host[idx] = saved;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  x = from_angles(m, ax);
  y = from_angles(n, ay);
}

struct SearchResult {
  double min, max;
  Vector min_x, min_y, max_x, max_y;
};

SearchResult search(std::size_t m, std::size_t n, const GridSpec& spec,
                    const Objective& f) {
  check_spec(spec);
  if (m > 3 || n > 3)
    throw DimensionTooLarge("oracle: grid search limited to m, n <= 3");
  const std::vector<Vector> xs = sphere_grid(m, spec.resolution);
  const std::vector<Vector> ys = sphere_grid(n, spec.resolution);
  if (xs.size() * ys.size() > 50'000'000)
    throw DimensionTooLarge("oracle: grid too large at this resolution");

  SearchResult r{};
  bool first = true;
  auto consider = [&](const Vector& x, const Vector& y) {
    const double v = f(x, y);
    if (first || v < r.min) {
      r.min = v;
      r.min_x = x;
      r.min_y = y;
    }
    if (first || v > r.max) {
      r.max = v;
      r.max_x = x;
      r.max_y = y;
    }
    first = false;
  };

  for (const Vector& x : xs)
    for (const Vector& y : ys) consider(x, y);

  Rng rng(spec.seed);
  for (std::size_t k = 0; k < spec.samples; ++k)
    consider(rng.unit_vector(m), rng.unit_vector(n));

  const double step = kTwoPi / static_cast<double>(spec.resolution);
  refine(m, n, r.max_x, r.max_y, r.max, /*maximize=*/true, step, f);
  refine(m, n, r.min_x, r.min_y, r.min, /*maximize=*/false, step, f);
  return r;
}

}  // namespace

double naive_quartic(const Tensor4& t, const Vector& x, const Vector& y) {
  double s = 0.0;
  for (std::size_t i1 = 0; i1 < t.m(); ++i1)
    for (std::size_t j1 = 0; j1 < t.n(); ++j1)
      for (std::size_t i2 = 0; i2 < t.m(); ++i2)
        for (std::size_t j2 = 0; j2 < t.n(); ++j2)
          s += t.at(i1, j1, i2, j2) * x[i1] * y[j1] * x[i2] * y[j2];
  return s;
}

double naive_quartic(const BiquadraticTensor& a, const Vector& x, const Vector& y) {
  return naive_quartic(a.to_tensor4(), x, y);
}

GridExtrema quartic_extrema_grid(const BiquadraticTensor& a, const GridSpec& spec) {
  const SearchResult r =
      search(a.m(), a.n(), spec,
             [&a](const Vector& x, const Vector& y) { return naive_quartic(a, x, y); });
  return {r.min, r.max, r.min_x, r.min_y, r.max_x, r.max_y};
}

double third_order_spectral_norm_brute(const ThirdOrderTensor& t, const GridSpec& spec) {
  if (t.p() > 3) throw DimensionTooLarge("oracle: third-order brute limited to p <= 3");
  // For fixed (x, y) the best unit z is w/|w| with w_k = <T_k, x y^T>, so the
  // value is |w|; only x and y are searched.
  const auto f = [&t](const Vector& x, const Vector& y) {
    double sq = 0.0;
    for (std::size_t k = 0; k < t.p(); ++k) {
      double w = 0.0;
      for (std::size_t i = 0; i < t.m(); ++i)
        for (std::size_t j = 0; j < t.n(); ++j) w += t.at(k, i, j) * x[i] * y[j];
      sq += w * w;
    }
    return std::sqrt(sq);
  };
  return search(t.m(), t.n(), spec, f).max;
}

Tensor4 naive_product(const BiquadraticTensor& a, const BiquadraticTensor& b) {
  const std::size_t m = a.m(), n = a.n();
  Tensor4 c(m, n);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2) {
          double s = 0.0;
          for (std::size_t i3 = 0; i3 < m; ++i3)
            for (std::size_t j3 = 0; j3 < n; ++j3)
              s += a.at(i1, j1, i3, j3) * b.at(i3, j3, i2, j2);
          c.at(i1, j1, i2, j2) = s;
        }
  return c;
}

Tensor4 naive_mode_multiply(const BiquadraticTensor& b, const Matrix& p, const Matrix& q) {
  Tensor4 out(p.rows, q.rows);
  for (std::size_t i1 = 0; i1 < p.rows; ++i1)
    for (std::size_t j1 = 0; j1 < q.rows; ++j1)
      for (std::size_t i2 = 0; i2 < p.rows; ++i2)
        for (std::size_t j2 = 0; j2 < q.rows; ++j2) {
          double s = 0.0;
          for (std::size_t k1 = 0; k1 < b.m(); ++k1)
            for (std::size_t l1 = 0; l1 < b.n(); ++l1)
              for (std::size_t k2 = 0; k2 < b.m(); ++k2)
                for (std::size_t l2 = 0; l2 < b.n(); ++l2)
                  s += b.at(k1, l1, k2, l2) * p(i1, k1) * q(j1, l1) * p(i2, k2) *
                       q(j2, l2);
          out.at(i1, j1, i2, j2) = s;
        }
  return out;
}

Matrix naive_flatten(const BiquadraticTensor& a) {
  const std::size_t m = a.m(), n = a.n();
  Matrix out(m * n, m * n);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t j1 = 0; j1 < n; ++j1)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        for (std::size_t j2 = 0; j2 < n; ++j2)
          out(i1 * n + j1, i2 * n + j2) = a.at(i1, j1, i2, j2);
  return out;
}

}  // namespace biquad::oracle
