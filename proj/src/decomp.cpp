#include "biquad/decomp.hpp"

#include <algorithm>
#include <cmath>

#include "biquad/kernels.hpp"

namespace biquad {

namespace {

double relative_error(const BiquadraticTensor& approx, const BiquadraticTensor& target) {
  double diff = 0.0;
  for (std::size_t i = 0; i < target.entries().size(); ++i) {
    const double d = approx.entries()[i] - target.entries()[i];
    diff += d * d;
  }
  const double ref = frobenius(target);
  return ref > 0.0 ? std::sqrt(diff) / ref : std::sqrt(diff);
}

// Push every term through x -> Fx * x, y -> Fy * y, renormalizing and folding
// the squared norms into the coefficient (the term is quadratic in each
// vector).  Terms whose image collapses numerically are dropped.
BQDecomposition transport(const BQDecomposition& d, const Matrix& fx, const Matrix& fy) {
  BQDecomposition out;
  out.m = fx.rows;
  out.n = fy.rows;
  for (const RankOneTerm& t : d.terms) {
    Vector x = matvec(fx, t.x);
    Vector y = matvec(fy, t.y);
    const double nx = norm2(x), ny = norm2(y);
    if (nx == 0.0 || ny == 0.0) continue;
    scale_in_place(x, 1.0 / nx);
    scale_in_place(y, 1.0 / ny);
    sign_normalize(x);
    sign_normalize(y);
    out.terms.push_back({t.coef * nx * nx * ny * ny, std::move(x), std::move(y)});
  }
  return out;
}

}  // namespace

BQDecomposition bq_rank_one_decompose(const BiquadraticTensor& a, double drop_tol) {
  const std::size_t m = a.m(), n = a.n();
  BQDecomposition d;
  d.m = m;
  d.n = n;
  const double anorm = frobenius(a);
  if (anorm == 0.0) return d;

  const PairFlattening pf = pair_flatten(a);
  const SingularValueDecomposition s = svd(pf.mat);
  const double sigma_floor =
      default_rank_tol(pf.mat.rows, pf.mat.cols) * (s.sigma.empty() ? 0.0 : s.sigma.front());
  const double coef_floor = drop_tol * anorm;

  for (std::size_t k = 0; k < s.sigma.size(); ++k) {
    if (!(s.sigma[k] > sigma_floor)) break;  // descending order
    const EigenDecomposition ue = symeig(fold_sym(s.U.column(k), m));
    const EigenDecomposition ve = symeig(fold_sym(s.V.column(k), n));
    for (std::size_t lu = 0; lu < ue.values.size(); ++lu) {
      for (std::size_t lv = 0; lv < ve.values.size(); ++lv) {
        const double coef = s.sigma[k] * ue.values[lu] * ve.values[lv];
        if (std::abs(coef) <= coef_floor) continue;
        Vector x = ue.vectors.column(lu);
        Vector y = ve.vectors.column(lv);
        sign_normalize(x);
        sign_normalize(y);
        d.terms.push_back({coef, std::move(x), std::move(y)});
      }
    }
  }
  d.reconstruction_error = relative_error(reconstruct(d), a);
  return d;
}

BiquadraticTensor reconstruct(const BQDecomposition& d) {
  return BiquadraticTensor::from_representatives(
      d.m, d.n,
      [&d](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        double s = 0.0;
        for (const RankOneTerm& t : d.terms)
          s += t.coef * t.x[i1] * t.y[j1] * t.x[i2] * t.y[j2];
        return s;
      });
}

std::pair<Matrix, Matrix> factor_matrices(const BQDecomposition& d) {
  Matrix x(d.m, d.terms.size());
  Matrix y(d.n, d.terms.size());
  for (std::size_t k = 0; k < d.terms.size(); ++k) {
    const double w = std::sqrt(std::abs(d.terms[k].coef));
    for (std::size_t i = 0; i < d.m; ++i) x(i, k) = w * d.terms[k].x[i];
    for (std::size_t j = 0; j < d.n; ++j) y(j, k) = w * d.terms[k].y[j];
  }
  return {std::move(x), std::move(y)};
}

std::pair<std::size_t, std::size_t> tucker_ranks(const BiquadraticTensor& a,
                                                 double rank_tol) {
  return {numerical_rank(flatten_mode1(a), rank_tol),
          numerical_rank(flatten_mode2(a), rank_tol)};
}

BiquadraticTensor mode_multiply(const BiquadraticTensor& b, const Matrix& p,
                                const Matrix& q) {
  if (p.cols != b.m() || q.cols != b.n())
    throw DimensionMismatch("mode_multiply: factor inner dimensions must match the core");
  const std::size_t d1 = b.m(), d2 = b.n();
  return BiquadraticTensor::from_representatives(
      p.rows, q.rows,
      [&](std::size_t i1, std::size_t j1, std::size_t i2, std::size_t j2) {
        double s = 0.0;
        for (std::size_t k1 = 0; k1 < d1; ++k1) {
          if (p(i1, k1) == 0.0) continue;
          for (std::size_t k2 = 0; k2 < d1; ++k2) {
            const double pp = p(i1, k1) * p(i2, k2);
            if (pp == 0.0) continue;
            for (std::size_t l1 = 0; l1 < d2; ++l1) {
              if (q(j1, l1) == 0.0) continue;
              double inner = 0.0;
              for (std::size_t l2 = 0; l2 < d2; ++l2)
                inner += b.at(k1, l1, k2, l2) * q(j2, l2);
              s += pp * q(j1, l1) * inner;
            }
          }
        }
        return s;
      });
}

BiquadraticTensor tucker_reconstruct(const TuckerForm& t) {
  return mode_multiply(t.core, t.P, t.Q);
}

TuckerForm hosvd(const BiquadraticTensor& a, std::size_t d1, std::size_t d2) {
  const std::size_t m = a.m(), n = a.n();
  if (d1 < 1 || d1 > m || d2 < 1 || d2 > n)
    throw DimensionMismatch("hosvd: requested core size out of range");

  const SingularValueDecomposition s1 = svd(flatten_mode1(a));
  const SingularValueDecomposition s2 = svd(flatten_mode2(a));
  Matrix p(m, d1), q(n, d2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < d1; ++k) p(i, k) = s1.U(i, k);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < d2; ++k) q(j, k) = s2.U(j, k);

  TuckerForm out{mode_multiply(a, transpose(p), transpose(q)), std::move(p),
                 std::move(q), TuckerKind::Orthonormal, 0.0, false};
  out.reconstruction_error = relative_error(tucker_reconstruct(out), a);
  out.exact = out.reconstruction_error <= 1e-8;
  return out;
}

TuckerForm independent_core(const BiquadraticTensor& a, const Matrix& p,
                            const Matrix& q) {
  if (p.rows != a.m() || q.rows != a.n())
    throw DimensionMismatch("independent_core: factor row counts must match the tensor");
  const Matrix p_hat = left_pseudoinverse(p);  // throws RankDeficient
  const Matrix q_hat = left_pseudoinverse(q);
  TuckerForm out{mode_multiply(a, p_hat, q_hat), p, q, TuckerKind::Independent, 0.0,
                 false};
  out.reconstruction_error = relative_error(tucker_reconstruct(out), a);
  out.exact = out.reconstruction_error <= 1e-8;
  return out;
}

BrPreservationReport br_preservation_check(const BiquadraticTensor& a,
                                           const Matrix& p, const Matrix& q,
                                           double tol) {
  const Matrix p_hat = left_pseudoinverse(p);
  const Matrix q_hat = left_pseudoinverse(q);
  const BiquadraticTensor core = mode_multiply(a, p_hat, q_hat);

  const BQDecomposition d_core = bq_rank_one_decompose(core);
  const BQDecomposition d_ambient = bq_rank_one_decompose(a);

  BrPreservationReport report;
  report.terms_core = d_core.terms.size();
  report.terms_ambient = d_ambient.terms.size();

  const BQDecomposition lifted = transport(d_core, p, q);
  report.push_forward_error = relative_error(reconstruct(lifted), a);
  report.push_forward_ok = report.push_forward_error <= tol;

  const BQDecomposition pulled = transport(d_ambient, p_hat, q_hat);
  report.pull_back_error = relative_error(reconstruct(pulled), core);
  report.pull_back_ok = report.pull_back_error <= tol;

  report.ok = report.push_forward_ok && report.pull_back_ok;
  return report;
}

}  // namespace biquad
