#include "gramor/gramians.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gramor/linalg.hpp"

namespace gramor {

namespace {

void require_stable(const LtiSystem& sys, const SimGrid& grid, const char* who) {
  DecayCertificate cert = decay_certificate(sys, grid);
  if (cert.stable) return;
  std::string msg = std::string(who) + ": system failed the stability decay certificate";
  if (cert.blowup_time > 0.0) {
    msg += " (divergence near t = " + std::to_string(cert.blowup_time) + ")";
  } else {
    msg += " (contraction " + std::to_string(cert.contraction) + " at horizon " +
           std::to_string(cert.certified_horizon) + ")";
  }
  throw std::runtime_error(msg);
}

struct ChannelAccumulators {
  std::vector<Matrix> wc;  // per input column
  std::vector<Matrix> wo;  // per output row
  std::vector<Matrix> wx;  // per (input, output) pair, input-major; per input when diagonal
};

// One streaming pass over the shared trajectories. Impulse states X start at
// B; initial-state responses start at the identity and only their outputs
// Y = C Z are consumed. Each requested channel keeps its own accumulator so
// subsystem tables and full gramians are the same floating-point sums.
ChannelAccumulators accumulate_channels(const LtiSystem& sys, const SimGrid& grid,
                                        bool want_wc, bool want_wo, bool want_wx,
                                        bool wx_diag_only) {
  const std::size_t n = sys.n;
  const std::size_t m = sys.m;
  const std::size_t o = sys.o;
  const bool need_x = want_wc || want_wx;
  const bool need_z = want_wo || want_wx;

  ChannelAccumulators acc;
  if (want_wc) acc.wc.assign(m, Matrix(n, n));
  if (want_wo) acc.wo.assign(o, Matrix(n, n));
  if (want_wx) acc.wx.assign(wx_diag_only ? m : m * o, Matrix(n, n));

  const Matrix g = rk4_transition(sys.a, grid.dt);
  Matrix x = need_x ? sys.b : Matrix();
  Matrix z = need_z ? identity(n) : Matrix();
  Matrix y;
  const std::vector<double> w = trapezoid_weights(grid);

  for (std::size_t k = 0;; ++k) {
    const double wk = w[k];
    if (need_z) y = gemm(sys.c, z);  // row j holds y_j over all basis starts

    if (want_wc) {
      for (std::size_t i = 0; i < m; ++i) {
        Matrix& target = acc.wc[i];
        for (std::size_t p = 0; p < n; ++p) {
          const double xp = wk * x(p, i);
          if (xp == 0.0) continue;
          double* row = &target.data[p * n];
          for (std::size_t q = 0; q < n; ++q) row[q] += xp * x(q, i);
        }
      }
    }
    if (want_wo) {
      for (std::size_t j = 0; j < o; ++j) {
        Matrix& target = acc.wo[j];
        const double* yrow = &y.data[j * n];
        for (std::size_t p = 0; p < n; ++p) {
          const double yp = wk * yrow[p];
          if (yp == 0.0) continue;
          double* row = &target.data[p * n];
          for (std::size_t q = 0; q < n; ++q) row[q] += yp * yrow[q];
        }
      }
    }
    if (want_wx) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j_begin = wx_diag_only ? i : 0;
        const std::size_t j_end = wx_diag_only ? i + 1 : o;
        for (std::size_t j = j_begin; j < j_end; ++j) {
          Matrix& target = acc.wx[wx_diag_only ? i : i * o + j];
          const double* yrow = &y.data[j * n];
          for (std::size_t p = 0; p < n; ++p) {
            const double xp = wk * x(p, i);
            if (xp == 0.0) continue;
            double* row = &target.data[p * n];
            for (std::size_t q = 0; q < n; ++q) row[q] += xp * yrow[q];
          }
        }
      }
    }

    if (k == grid.steps) break;
    if (need_x) {
      x = gemm(g, x);
      if (!all_finite(x)) {
        throw std::runtime_error("gramian accumulation: divergence at step " +
                                 std::to_string(k + 1));
      }
    }
    if (need_z) {
      z = gemm(g, z);
      if (!all_finite(z)) {
        throw std::runtime_error("gramian accumulation: divergence at step " +
                                 std::to_string(k + 1));
      }
    }
  }
  return acc;
}

Matrix sum_in_order(const std::vector<Matrix>& parts, std::size_t n) {
  Matrix total(n, n);
  for (const Matrix& p : parts) total = add(total, p);
  return total;
}

}  // namespace

Matrix wc_empirical(const LtiSystem& sys, const SimGrid& grid) {
  require_stable(sys, grid, "wc_empirical");
  ChannelAccumulators acc = accumulate_channels(sys, grid, true, false, false, false);
  return sum_in_order(acc.wc, sys.n);
}

Matrix wo_empirical(const LtiSystem& sys, const SimGrid& grid) {
  require_stable(sys, grid, "wo_empirical");
  ChannelAccumulators acc = accumulate_channels(sys, grid, false, true, false, false);
  return sum_in_order(acc.wo, sys.n);
}

Matrix wx_empirical(const LtiSystem& sys, const SimGrid& grid) {
  if (sys.m != sys.o) {
    throw std::invalid_argument("wx_empirical: cross gramian requires a square system, got " +
                                std::to_string(sys.m) + " inputs and " +
                                std::to_string(sys.o) + " outputs");
  }
  require_stable(sys, grid, "wx_empirical");
  ChannelAccumulators acc = accumulate_channels(sys, grid, false, false, true, true);
  return sum_in_order(acc.wx, sys.n);
}

Matrix wz_nonsymmetric(const LtiSystem& sys, const SimGrid& grid, WzPath path) {
  if (path == WzPath::averaged_fast_path) {
    return wx_empirical(averaged_siso(sys), grid);
  }
  require_stable(sys, grid, "wz_nonsymmetric");
  ChannelAccumulators acc = accumulate_channels(sys, grid, false, false, true, false);
  return sum_in_order(acc.wx, sys.n);
}

Matrix wx_embedding(const LtiSystem& sys, const Matrix& j, const SimGrid& grid) {
  return wx_empirical(embed_symmetric(sys, j), grid);
}

SubsystemGramians subsystem_gramian_table(const LtiSystem& sys, const SimGrid& grid) {
  require_stable(sys, grid, "subsystem_gramian_table");
  ChannelAccumulators acc = accumulate_channels(sys, grid, true, true, true, false);
  SubsystemGramians table;
  table.wc = std::move(acc.wc);
  table.wo = std::move(acc.wo);
  table.wx = std::move(acc.wx);
  return table;
}

double sylvester_residual(const Matrix& a, const Matrix& w, const Matrix& rhs_left,
                          const Matrix& rhs_right, ResidualForm form) {
  if (a.rows != a.cols || w.rows != a.rows || w.cols != a.rows) {
    throw std::invalid_argument("sylvester_residual: A and w must be square and same size");
  }
  const Matrix rhs = gemm(rhs_left, rhs_right);
  if (rhs.rows != a.rows || rhs.cols != a.rows) {
    throw std::invalid_argument("sylvester_residual: right-hand side is " +
                                std::to_string(rhs.rows) + "x" + std::to_string(rhs.cols) +
                                ", expected " + std::to_string(a.rows) + "x" +
                                std::to_string(a.rows));
  }
  Matrix op;
  switch (form) {
    case ResidualForm::cross:
      op = add(gemm(a, w), gemm(w, a));
      break;
    case ResidualForm::controllability:
      op = add(gemm(a, w), gemm(w, a, false, true));
      break;
    case ResidualForm::observability:
      op = add(gemm(a, w, true, false), gemm(w, a));
      break;
  }
  return fro_norm(add(op, rhs)) / std::max(1.0, fro_norm(rhs));
}

std::vector<double> hankel_values(const Matrix& wc, const Matrix& wo) {
  // Square-root form: singular values of Lo^T*Lc. Working on the factor
  // product keeps the absolute error near eps*sigma_max, so values several
  // orders below sigma_max stay accurate; an eigendecomposition of the
  // congruence Lc^T*wo*Lc squares the conditioning and destroys everything
  // below sqrt(eps)*sigma_max.
  Matrix lc = cholesky_psd(wc);
  Matrix lo = cholesky_psd(wo);
  std::vector<double> vals = svd(gemm(lo, lc, true, false)).s;
  std::sort(vals.begin(), vals.end(), std::greater<double>());
  return vals;
}

}  // namespace gramor
