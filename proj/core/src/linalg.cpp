#include "gramor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gramor {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square(const Matrix& a, const char* who) {
  if (a.rows != a.cols) {
    throw std::invalid_argument(std::string(who) + ": matrix must be square, got " +
                                std::to_string(a.rows) + "x" + std::to_string(a.cols));
  }
}

void require_symmetric(const Matrix& a, const char* who) {
  require_square(a, who);
  const double asym = fro_norm(sub(a, transpose(a)));
  if (asym > 1e-8 * fro_norm(a)) {
    throw std::invalid_argument(std::string(who) + ": matrix is not symmetric, ||a - a^T|| = " +
                                std::to_string(asym));
  }
}

Matrix symmetrize(const Matrix& a) {
  Matrix s(a.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) s(i, j) = 0.5 * (a(i, j) + a(j, i));
  return s;
}

// Jacobi tangent for the rotation annihilating the (p,q) coupling.
double jacobi_tangent(double theta) {
  if (theta >= 0.0) return 1.0 / (theta + std::sqrt(1.0 + theta * theta));
  return -1.0 / (-theta + std::sqrt(1.0 + theta * theta));
}

}  // namespace

Matrix lu_solve(const Matrix& a, const Matrix& rhs) {
  require_square(a, "lu_solve");
  if (rhs.rows != a.rows) {
    throw std::invalid_argument("lu_solve: rhs has " + std::to_string(rhs.rows) +
                                " rows, expected " + std::to_string(a.rows));
  }
  const std::size_t n = a.rows;
  Matrix lu = a;
  Matrix x = rhs;
  const double tol = static_cast<double>(n) * kEps * max_abs(a);

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(lu(i, k)) > std::fabs(lu(p, k))) p = i;
    const double piv = lu(p, k);
    if (std::fabs(piv) <= tol) {
      throw std::runtime_error("lu_solve: matrix singular to tolerance, pivot magnitude " +
                               std::to_string(std::fabs(piv)));
    }
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      for (std::size_t j = 0; j < x.cols; ++j) std::swap(x(k, j), x(p, j));
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu(i, k) / piv;
      lu(i, k) = l;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= l * lu(k, j);
      for (std::size_t j = 0; j < x.cols; ++j) x(i, j) -= l * x(k, j);
    }
  }
  // Back substitution on the upper factor.
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < x.cols; ++j) {
      double v = x(k, j);
      for (std::size_t i = k + 1; i < n; ++i) v -= lu(k, i) * x(i, j);
      x(k, j) = v / lu(k, k);
    }
  }
  if (!all_finite(x)) throw std::runtime_error("lu_solve: non-finite solution");
  return x;
}

Matrix cholesky_psd(const Matrix& a) {
  require_symmetric(a, "cholesky_psd");
  const std::size_t n = a.rows;
  const double nf = fro_norm(a);
  const double stop = 1e-12 * nf;   // remaining mass indistinguishable from zero
  const double reject = -1e-10 * nf;

  Matrix s = symmetrize(a);
  Matrix f(n, n);
  std::vector<bool> used(n, false);

  for (std::size_t k = 0; k < n; ++k) {
    // Largest remaining diagonal as pivot: keeps tiny/negative quadrature
    // noise from being amplified into the factor.
    std::size_t j = n;
    double d = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!used[i] && s(i, i) > d) {
        d = s(i, i);
        j = i;
      }
    }
    if (d < reject) {
      throw std::runtime_error("cholesky_psd: not positive semidefinite, diagonal " +
                               std::to_string(d));
    }
    if (d <= stop) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!used[i] && s(i, i) < reject) {
          throw std::runtime_error("cholesky_psd: not positive semidefinite, diagonal " +
                                   std::to_string(s(i, i)));
        }
      }
      break;  // remaining block is numerically zero
    }
    used[j] = true;
    const double root = std::sqrt(d);
    for (std::size_t i = 0; i < n; ++i) f(i, k) = s(i, j) / root;
    for (std::size_t r = 0; r < n; ++r) {
      const double fr = f(r, k);
      if (fr == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) s(r, c) -= fr * f(c, k);
    }
  }
  return f;
}

EigSym eig_sym(const Matrix& a) {
  require_symmetric(a, "eig_sym");
  const std::size_t n = a.rows;
  Matrix w = symmetrize(a);
  Matrix v = identity(n);
  const double nf = fro_norm(w);
  const double thresh = 1e-14 * nf;

  if (nf > 0.0) {
    bool converged = false;
    for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
      converged = true;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = w(p, q);
          if (std::fabs(apq) <= thresh) continue;
          converged = false;
          const double theta = (w(q, q) - w(p, p)) / (2.0 * apq);
          const double t = jacobi_tangent(theta);
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double smix = t * c;

          const double app = w(p, p);
          const double aqq = w(q, q);
          w(p, p) = app - t * apq;
          w(q, q) = aqq + t * apq;
          w(p, q) = 0.0;
          w(q, p) = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            if (i == p || i == q) continue;
            const double aip = w(i, p);
            const double aiq = w(i, q);
            w(i, p) = c * aip - smix * aiq;
            w(p, i) = w(i, p);
            w(i, q) = smix * aip + c * aiq;
            w(q, i) = w(i, q);
          }
          for (std::size_t i = 0; i < n; ++i) {
            const double vip = v(i, p);
            const double viq = v(i, q);
            v(i, p) = c * vip - smix * viq;
            v(i, q) = smix * vip + c * viq;
          }
        }
      }
    }
    if (!converged) {
      double off = 0.0;
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * w(p, q) * w(p, q);
      throw std::runtime_error("eig_sym: no convergence after 60 sweeps, off-diagonal norm " +
                               std::to_string(std::sqrt(off)));
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double mi = std::fabs(w(i, i));
    const double mj = std::fabs(w(j, j));
    if (mi != mj) return mi > mj;
    return w(i, i) > w(j, j);
  });

  EigSym out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = w(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

Svd svd(const Matrix& a) {
  if (!all_finite(a)) throw std::invalid_argument("svd: input has non-finite entries");
  if (a.rows < a.cols) {
    Svd t = svd(transpose(a));
    return Svd{t.v, t.s, t.u};
  }
  const std::size_t m = a.rows;
  const std::size_t n = a.cols;
  Matrix w = a;
  Matrix v = identity(n);

  std::vector<double> colsq(n);
  auto refresh_colsq = [&]() {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < m; ++r) s += w(r, j) * w(r, j);
      colsq[j] = s;
    }
  };

  bool converged = (fro_norm(a) == 0.0);
  for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
    refresh_colsq();
    converged = true;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double alpha = colsq[i];
        const double beta = colsq[j];
        if (alpha == 0.0 || beta == 0.0) continue;
        double gamma = 0.0;
        for (std::size_t r = 0; r < m; ++r) gamma += w(r, i) * w(r, j);
        if (std::fabs(gamma) <= 1e-14 * std::sqrt(alpha) * std::sqrt(beta)) continue;
        converged = false;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = jacobi_tangent(zeta);
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t r = 0; r < m; ++r) {
          const double wi = w(r, i);
          const double wj = w(r, j);
          w(r, i) = c * wi - s * wj;
          w(r, j) = s * wi + c * wj;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double vi = v(r, i);
          const double vj = v(r, j);
          v(r, i) = c * vi - s * vj;
          v(r, j) = s * vi + c * vj;
        }
        colsq[i] = alpha - t * gamma;
        colsq[j] = beta + t * gamma;
      }
    }
  }
  if (!converged) {
    refresh_colsq();
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double gamma = 0.0;
        for (std::size_t r = 0; r < m; ++r) gamma += w(r, i) * w(r, j);
        const double denom = std::sqrt(colsq[i]) * std::sqrt(colsq[j]);
        if (denom > 0.0) worst = std::max(worst, std::fabs(gamma) / denom);
      }
    }
    throw std::runtime_error("svd: no convergence after 60 sweeps, residual coupling " +
                             std::to_string(worst));
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t r = 0; r < m; ++r) s += w(r, j) * w(r, j);
    sigma[j] = std::sqrt(s);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return sigma[i] > sigma[j]; });

  Svd out;
  out.s.resize(n);
  out.u = Matrix(m, n);
  out.v = Matrix(n, n);
  const double sigma_max = sigma[order[0]];
  const double rank_tol = static_cast<double>(std::max(m, n)) * kEps * sigma_max;

  std::vector<std::size_t> deficient;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.s[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v(i, j);
    if (sigma[j] > rank_tol) {
      for (std::size_t r = 0; r < m; ++r) out.u(r, k) = w(r, j) / sigma[j];
    } else {
      deficient.push_back(k);
    }
  }
  // Numerically zero columns get an orthonormal completion so u always has a
  // full set of orthonormal columns.
  std::vector<bool> filled(n, true);
  for (std::size_t k : deficient) filled[k] = false;
  for (std::size_t k : deficient) {
    std::vector<double> best(m, 0.0);
    double best_nrm = -1.0;
    for (std::size_t cand = 0; cand < m; ++cand) {
      std::vector<double> vec(m, 0.0);
      vec[cand] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t c = 0; c < n; ++c) {
          if (!filled[c]) continue;
          double dot = 0.0;
          for (std::size_t r = 0; r < m; ++r) dot += out.u(r, c) * vec[r];
          for (std::size_t r = 0; r < m; ++r) vec[r] -= dot * out.u(r, c);
        }
      }
      double nrm = 0.0;
      for (double x : vec) nrm += x * x;
      nrm = std::sqrt(nrm);
      if (nrm > best_nrm) {
        best_nrm = nrm;
        best = vec;
      }
      if (nrm > 0.5) break;  // plenty independent already
    }
    for (std::size_t r = 0; r < m; ++r) out.u(r, k) = best[r] / best_nrm;
    filled[k] = true;
  }
  return out;
}

}  // namespace gramor
