#include "biquad/meigen.hpp"

#include <algorithm>
#include <cmath>

#include "biquad/kernels.hpp"
#include "biquad/random.hpp"

namespace biquad {

namespace {

double max_abs_entry(const BiquadraticTensor& a) {
  double m = 0.0;
  for (double v : a.entries()) m = std::max(m, std::abs(v));
  return m;
}

Vector canonical_unit(std::size_t dim) {
  Vector e(dim, 0.0);
  if (dim > 0) e[0] = 1.0;
  return e;
}

// Eigenvector of the algebraically largest eigenvalue of s + shift*I.
// The shift does not change eigenvectors; it is applied so the matrix handed
// to the Jacobi kernel is PSD, matching the shifted-power-method scheme.
Vector top_eigenvector(const SymMatrix& s, double shift) {
  SymMatrix shifted = s;
  for (std::size_t i = 0; i < s.rows; ++i) shifted(i, i) += shift;
  const EigenDecomposition eig = symeig(shifted);
  std::size_t arg = 0;
  for (std::size_t k = 1; k < eig.values.size(); ++k)
    if (eig.values[k] > eig.values[arg]) arg = k;
  Vector v = eig.vectors.column(arg);
  sign_normalize(v);
  return v;
}

struct RunOutcome {
  MEigenPair pair;
  bool converged = false;
};

// Deterministic preference order between solver starts: larger lambda first,
// then larger |lambda|, then lexicographically smaller sign-normalized x, y.
bool better_run(const RunOutcome& a, const RunOutcome& b) {
  if (a.pair.lambda != b.pair.lambda) return a.pair.lambda > b.pair.lambda;
  if (std::abs(a.pair.lambda) != std::abs(b.pair.lambda))
    return std::abs(a.pair.lambda) > std::abs(b.pair.lambda);
  if (a.pair.x != b.pair.x) return lex_less(a.pair.x, b.pair.x);
  return lex_less(a.pair.y, b.pair.y);
}

}  // namespace

SymMatrix contracted_matrix_y(const BiquadraticTensor& a, const Vector& y) {
  const std::size_t m = a.m(), n = a.n();
  if (y.size() != n) throw DimensionMismatch("contracted_matrix_y: bad y size");
  SymMatrix g(m, m);
  for (std::size_t i1 = 0; i1 < m; ++i1)
    for (std::size_t i2 = 0; i2 <= i1; ++i2) {
      double s = 0.0;
      for (std::size_t j1 = 0; j1 < n; ++j1) {
        if (y[j1] == 0.0) continue;
        double inner = 0.0;
        for (std::size_t j2 = 0; j2 < n; ++j2)
          inner += a.at(i1, j1, i2, j2) * y[j2];
        s += y[j1] * inner;
      }
      g(i1, i2) = s;
      g(i2, i1) = s;
    }
  return g;
}

SymMatrix contracted_matrix_x(const BiquadraticTensor& a, const Vector& x) {
  const std::size_t m = a.m(), n = a.n();
  if (x.size() != m) throw DimensionMismatch("contracted_matrix_x: bad x size");
  SymMatrix h(n, n);
  for (std::size_t j1 = 0; j1 < n; ++j1)
    for (std::size_t j2 = 0; j2 <= j1; ++j2) {
      double s = 0.0;
      for (std::size_t i1 = 0; i1 < m; ++i1) {
        if (x[i1] == 0.0) continue;
        double inner = 0.0;
        for (std::size_t i2 = 0; i2 < m; ++i2)
          inner += a.at(i1, j1, i2, j2) * x[i2];
        s += x[i1] * inner;
      }
      h(j1, j2) = s;
      h(j2, j1) = s;
    }
  return h;
}

double m_residual(const BiquadraticTensor& a, double lambda, const Vector& x,
                  const Vector& y) {
  const SymMatrix g = contracted_matrix_y(a, y);
  const SymMatrix h = contracted_matrix_x(a, x);
  const Vector gx = matvec(g, x);
  const Vector hy = matvec(h, y);
  double rx = 0.0, ry = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = gx[i] - lambda * x[i];
    rx += d * d;
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    const double d = hy[j] - lambda * y[j];
    ry += d * d;
  }
  return std::max({std::sqrt(rx), std::sqrt(ry), std::abs(norm2(x) - 1.0),
                   std::abs(norm2(y) - 1.0)});
}

MEigenPair alternating_maximize_from(const BiquadraticTensor& a,
                                     const SolverConfig& config, Vector x0,
                                     Vector y0, std::vector<double>* trace,
                                     bool* converged) {
  const double anorm = frobenius(a);
  const double shift =
      config.shift.value_or(static_cast<double>(a.m() * a.n()) * max_abs_entry(a));
  const double res_target = 1e-10 * std::max(1.0, anorm);

  Vector x = std::move(x0), y = std::move(y0);
  double f = quartic_form(a, x, y);
  if (trace) trace->push_back(f);
  bool ok = false;
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    x = top_eigenvector(contracted_matrix_y(a, y), shift);
    if (trace) trace->push_back(quartic_form(a, x, y));
    y = top_eigenvector(contracted_matrix_x(a, x), shift);
    const double f_new = quartic_form(a, x, y);
    if (trace) trace->push_back(f_new);
    const double delta = f_new - f;
    f = f_new;
    if (std::abs(delta) <= config.tol * std::max(1.0, std::abs(f)) &&
        m_residual(a, f, x, y) <= res_target) {
      ok = true;
      break;
    }
  }
  MEigenPair pair;
  pair.lambda = f;
  pair.x = x;
  pair.y = y;
  pair.residual = m_residual(a, f, x, y);
  // A run is still usable when it lands an order of magnitude inside the
  // 1e-8 * max(1, ||A||_F) residual contract without hitting res_target.
  if (!ok && pair.residual <= 10.0 * res_target) ok = true;
  if (converged) *converged = ok;
  return pair;
}

MEigenPair alternating_maximize(const BiquadraticTensor& a, const SolverConfig& config) {
  if (a.m() == 0 || a.n() == 0) throw DimensionMismatch("alternating_maximize: empty tensor");
  if (frobenius(a) == 0.0) {
    MEigenPair zero;
    zero.x = canonical_unit(a.m());
    zero.y = canonical_unit(a.n());
    return zero;
  }

  Rng rng(config.seed);
  std::optional<RunOutcome> best;           // best converged run
  std::optional<RunOutcome> best_overall;   // best run regardless
  const std::size_t starts = std::max<std::size_t>(1, config.starts);
  for (std::size_t s = 0; s < starts; ++s) {
    Vector x0 = rng.unit_vector(a.m());
    Vector y0 = rng.unit_vector(a.n());
    RunOutcome run;
    run.pair = alternating_maximize_from(a, config, std::move(x0), std::move(y0),
                                         nullptr, &run.converged);
    sign_normalize(run.pair.x);
    sign_normalize(run.pair.y);
    if (run.converged && (!best || better_run(run, *best))) best = run;
    if (!best_overall || better_run(run, *best_overall)) best_overall = run;
  }
  if (!best) {
    const MEigenPair& p = best_overall->pair;
    throw ConvergenceFailure("alternating_maximize: no start met the residual target",
                             p.lambda, p.x, p.y, p.residual);
  }
  return best->pair;
}

MEigenPair largest_m_eigenvalue(const BiquadraticTensor& a, const SolverConfig& config) {
  return alternating_maximize(a, config);
}

MEigenPair smallest_m_eigenvalue(const BiquadraticTensor& a, const SolverConfig& config) {
  MEigenPair p = alternating_maximize(scale(a, -1.0), config);
  p.lambda = -p.lambda;
  p.residual = m_residual(a, p.lambda, p.x, p.y);
  return p;
}

MEigenPair largest_m_eigenvalue_envelope(const BiquadraticTensor& a,
                                         const SolverConfig& config) {
  try {
    return largest_m_eigenvalue(a, config);
  } catch (const ConvergenceFailure& e) {
    return MEigenPair{e.lambda, e.x, e.y, e.residual};
  }
}

MEigenPair smallest_m_eigenvalue_envelope(const BiquadraticTensor& a,
                                          const SolverConfig& config) {
  try {
    return smallest_m_eigenvalue(a, config);
  } catch (const ConvergenceFailure& e) {
    // The failure was raised while maximizing -A; translate the iterate back.
    MEigenPair p{-e.lambda, e.x, e.y, 0.0};
    p.residual = m_residual(a, p.lambda, p.x, p.y);
    return p;
  }
}

NormInterval spectral_norm_interval(const BiquadraticTensor& a,
                                    const SolverConfig& config) {
  NormInterval iv;
  iv.lower_source = source::kMEigenSearch;
  iv.upper_source = source::kMatrixSpectral;
  if (frobenius(a) == 0.0) {
    iv.exact = true;
    return iv;
  }
  const MEigenPair hi = largest_m_eigenvalue_envelope(a, config);
  const MEigenPair lo = smallest_m_eigenvalue_envelope(a, config);
  iv.lower = std::max(std::abs(hi.lambda), std::abs(lo.lambda));
  iv.upper = matrix_spectral_norm(flatten_square(a));
  if (iv.lower > iv.upper + 1e-10 * std::max(1.0, iv.upper))
    throw Error("spectral_norm_interval: lower bound exceeds upper bound (kernel bug)");
  iv.exact = iv.upper - iv.lower <= 1e-10 * std::max(1.0, iv.upper);
  return iv;
}

PsdVerdict psd_classify(const BiquadraticTensor& a, const SolverConfig& config) {
  PsdVerdict verdict;
  const double anorm = frobenius(a);
  if (anorm == 0.0) {
    verdict.tag = PsdTag::CertifiedPSD;
    return verdict;
  }
  const double threshold = 1e-10 * anorm;

  double flat_min = 0.0;
  const EigenDecomposition eig = symeig(flatten_square(a));
  for (double l : eig.values) flat_min = std::min(flat_min, l);

  const MEigenPair lo = smallest_m_eigenvalue_envelope(a, config);
  verdict.min_estimate = lo.lambda;

  if (flat_min >= -threshold) {
    // (x kron y)^T M (x kron y) >= lambda_min(M) >= 0 proves the quartic
    // form nonnegative everywhere.
    verdict.tag = PsdTag::CertifiedPSD;
    return verdict;
  }
  if (lo.lambda < -threshold) {
    verdict.tag = PsdTag::NotPSD;
    verdict.witness = PsdWitness{lo.x, lo.y, lo.lambda};
    return verdict;
  }
  verdict.tag = PsdTag::Unknown;
  return verdict;
}

}  // namespace biquad
