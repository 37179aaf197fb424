#include "biquad/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace biquad {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < a.rows; ++p)
    for (std::size_t q = p + 1; q < a.cols; ++q) s += 2.0 * a(p, q) * a(p, q);
  return std::sqrt(s);
}

// Column j of m, flipped so its largest-magnitude component is positive.
// Keeps eigenvector and singular-vector output deterministic.
void sign_fix_column(Matrix& m, std::size_t j, Matrix* paired = nullptr,
                     std::size_t paired_j = 0) {
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < m.rows; ++i) {
    const double v = std::abs(m(i, j));
    if (v > best) {
      best = v;
      arg = i;
    }
  }
  if (best > 0.0 && m(arg, j) < 0.0) {
    for (std::size_t i = 0; i < m.rows; ++i) m(i, j) = -m(i, j);
    if (paired)
      for (std::size_t i = 0; i < paired->rows; ++i)
        (*paired)(i, paired_j) = -(*paired)(i, paired_j);
  }
}

// Fills the columns of `u` not marked in `have` with canonical basis vectors
// orthogonalized against every column already in place.  Deterministic.
void complete_orthonormal(Matrix& u, std::vector<bool>& have) {
  const std::size_t n = u.rows;
  for (std::size_t j = 0; j < u.cols; ++j) {
    if (have[j]) continue;
    Vector cand;
    bool placed = false;
    for (std::size_t e = 0; e < n && !placed; ++e) {
      cand.assign(n, 0.0);
      cand[e] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < u.cols; ++k) {
          if (!have[k]) continue;
          double proj = 0.0;
          for (std::size_t i = 0; i < n; ++i) proj += u(i, k) * cand[i];
          for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * u(i, k);
        }
      }
      const double nn = norm2(cand);
      if (nn > 0.1) {
        for (std::size_t i = 0; i < n; ++i) u(i, j) = cand[i] / nn;
        have[j] = true;
        placed = true;
      }
    }
    // n canonical candidates always contain one with a large residual
    // against < n orthonormal columns, so `placed` holds here.
  }
}

}  // namespace

double default_rank_tol(std::size_t rows, std::size_t cols) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon();
}

EigenDecomposition symeig(const SymMatrix& s) {
  if (s.rows != s.cols) throw DimensionMismatch("symeig: matrix not square");
  const std::size_t n = s.rows;
  Matrix a = s;
  // Mirror the upper triangle so stale lower entries cannot leak in.
  for (std::size_t p = 0; p + 1 < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) a(q, p) = a(p, q);
  Matrix v = Matrix::identity(n);
  const double scale = frobenius_norm(a);

  if (n > 0 && scale > 0.0) {
    const double stop = 1e-14 * scale;
    const double skip = 1e-18 * scale;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal_norm(a) <= stop) break;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (std::abs(apq) <= skip) {
            a(p, q) = a(q, p) = 0.0;
            continue;
          }
          const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
          double t;
          if (std::abs(theta) > 1e150) {
            t = 1.0 / (2.0 * theta);
          } else {
            t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double sn = t * c;
          const double tau = sn / (1.0 + c);

          const double app = a(p, p), aqq = a(q, q);
          a(p, p) = app - t * apq;
          a(q, q) = aqq + t * apq;
          a(p, q) = a(q, p) = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            if (k == p || k == q) continue;
            const double akp = a(k, p), akq = a(k, q);
            a(k, p) = a(p, k) = akp - sn * (akq + tau * akp);
            a(k, q) = a(q, k) = akq + sn * (akp - tau * akq);
          }
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p), vkq = v(k, q);
            v(k, p) = vkp - sn * (vkq + tau * vkp);
            v(k, q) = vkq + sn * (vkp - tau * vkq);
          }
        }
      }
    }
    if (off_diagonal_norm(a) > 1e-10 * scale)
      throw ConvergenceFailure("symeig: Jacobi sweep cap reached");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double ai = std::abs(a(i, i)), aj = std::abs(a(j, j));
    if (ai != aj) return ai > aj;
    return a(i, i) > a(j, j);
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    sign_fix_column(out.vectors, j);
  }
  return out;
}

SingularValueDecomposition svd(const Matrix& a) {
  if (a.rows < a.cols) {
    SingularValueDecomposition t = svd(transpose(a));
    return {std::move(t.V), std::move(t.sigma), std::move(t.U)};
  }
  const std::size_t r = a.rows, c = a.cols;
  Matrix b = a;
  Matrix v = Matrix::identity(c);
  const double scale = frobenius_norm(a);

  if (c > 0 && scale > 0.0) {
    bool converged = false;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
      converged = true;
      for (std::size_t p = 0; p + 1 < c; ++p) {
        for (std::size_t q = p + 1; q < c; ++q) {
          double alpha = 0.0, beta = 0.0, gamma = 0.0;
          for (std::size_t i = 0; i < r; ++i) {
            alpha += b(i, p) * b(i, p);
            beta += b(i, q) * b(i, q);
            gamma += b(i, p) * b(i, q);
          }
          const double ab = std::sqrt(alpha * beta);
          if (ab == 0.0 || std::abs(gamma) <= 1e-15 * ab) continue;
          converged = false;
          const double zeta = (beta - alpha) / (2.0 * gamma);
          double t;
          if (std::abs(zeta) > 1e150) {
            t = 1.0 / (2.0 * zeta);
          } else {
            t = 1.0 / (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
            if (zeta < 0.0) t = -t;
          }
          const double cs = 1.0 / std::sqrt(t * t + 1.0);
          const double sn = t * cs;
          for (std::size_t i = 0; i < r; ++i) {
            const double bp = b(i, p), bq = b(i, q);
            b(i, p) = cs * bp - sn * bq;
            b(i, q) = sn * bp + cs * bq;
          }
          for (std::size_t i = 0; i < c; ++i) {
            const double vp = v(i, p), vq = v(i, q);
            v(i, p) = cs * vp - sn * vq;
            v(i, q) = sn * vp + cs * vq;
          }
        }
      }
    }
    if (!converged) {
      // Verify the residual orthogonality before giving up.
      double worst = 0.0;
      for (std::size_t p = 0; p + 1 < c; ++p)
        for (std::size_t q = p + 1; q < c; ++q) {
          double gamma = 0.0;
          for (std::size_t i = 0; i < r; ++i) gamma += b(i, p) * b(i, q);
          worst = std::max(worst, std::abs(gamma));
        }
      if (worst > 1e-10 * scale * scale)
        throw ConvergenceFailure("svd: Jacobi sweep cap reached");
    }
  }

  Vector sig(c, 0.0);
  for (std::size_t j = 0; j < c; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < r; ++i) s += b(i, j) * b(i, j);
    sig[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(c);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sig[i] > sig[j]; });

  SingularValueDecomposition out;
  out.sigma.resize(c);
  out.U = Matrix(r, c);
  out.V = Matrix(c, c);
  const double sig_max = c > 0 ? sig[order[0]] : 0.0;
  const double floor = 1e-13 * sig_max;
  std::vector<bool> have(c, false);
  for (std::size_t j = 0; j < c; ++j) {
    const std::size_t src = order[j];
    out.sigma[j] = sig[src];
    for (std::size_t i = 0; i < c; ++i) out.V(i, j) = v(i, src);
    if (sig[src] > floor && sig[src] > 0.0) {
      for (std::size_t i = 0; i < r; ++i) out.U(i, j) = b(i, src) / sig[src];
      have[j] = true;
    }
  }
  complete_orthonormal(out.U, have);
  for (std::size_t j = 0; j < c; ++j) sign_fix_column(out.U, j, &out.V, j);
  return out;
}

namespace {

bool bitwise_symmetric(const Matrix& a) {
  if (a.rows != a.cols) return false;
  for (std::size_t i = 0; i + 1 < a.rows; ++i)
    for (std::size_t j = i + 1; j < a.cols; ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

}  // namespace

double matrix_spectral_norm(const Matrix& a) {
  if (a.rows == 0 || a.cols == 0) return 0.0;
  if (bitwise_symmetric(a)) {
    const auto eig = symeig(a);
    return eig.values.empty() ? 0.0 : std::abs(eig.values.front());
  }
  const auto s = svd(a);
  return s.sigma.empty() ? 0.0 : s.sigma.front();
}

double matrix_nuclear_norm(const Matrix& a) {
  if (a.rows == 0 || a.cols == 0) return 0.0;
  double sum = 0.0;
  if (bitwise_symmetric(a)) {
    for (double l : symeig(a).values) sum += std::abs(l);
    return sum;
  }
  for (double s : svd(a).sigma) sum += s;
  return sum;
}

Matrix left_pseudoinverse(const Matrix& p) {
  if (p.cols == 0) return Matrix(0, p.rows);
  if (p.rows < p.cols)
    throw RankDeficient("left_pseudoinverse: fewer rows than columns");
  const auto s = svd(p);
  const double tol = default_rank_tol(p.rows, p.cols) * (s.sigma.empty() ? 0.0 : s.sigma.front());
  for (double sv : s.sigma)
    if (!(sv > tol))
      throw RankDeficient("left_pseudoinverse: input is column rank deficient");
  // V * diag(1/sigma) * U^T
  Matrix out(p.cols, p.rows);
  for (std::size_t i = 0; i < p.cols; ++i)
    for (std::size_t j = 0; j < p.rows; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < s.sigma.size(); ++k)
        acc += s.V(i, k) * s.U(j, k) / s.sigma[k];
      out(i, j) = acc;
    }
  return out;
}

std::size_t numerical_rank(const Matrix& a, double rank_tol_rel) {
  if (a.rows == 0 || a.cols == 0) return 0;
  const auto s = svd(a);
  if (s.sigma.empty() || s.sigma.front() == 0.0) return 0;
  const double tol = rank_tol_rel * s.sigma.front();
  std::size_t rank = 0;
  for (double sv : s.sigma)
    if (sv > tol) ++rank;
  return rank;
}

}  // namespace biquad
