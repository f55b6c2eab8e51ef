#include "gramor/reduce.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "gramor/linalg.hpp"
#include "gramor/sim.hpp"

namespace gramor {

namespace {

void require_order(std::size_t order, std::size_t full, const char* who) {
  if (order == 0 || order > full) {
    throw std::invalid_argument(std::string(who) + ": order " + std::to_string(order) +
                                " out of range 1.." + std::to_string(full));
  }
}

struct GalerkinFactor {
  Matrix u;  // all left singular vectors of the gramian
};

GalerkinFactor galerkin_factor(const Matrix& w) {
  if (w.rows != w.cols) {
    throw std::invalid_argument("galerkin_from_gramian: gramian must be square, got " +
                                std::to_string(w.rows) + "x" + std::to_string(w.cols));
  }
  return {svd(w).u};
}

Projection galerkin_slice(const GalerkinFactor& f, std::size_t order) {
  Projection p;
  p.u1 = slice_cols(f.u, 0, order);
  p.v1 = transpose(p.u1);
  p.order = order;
  p.kind = ProjectionKind::galerkin;
  return p;
}

struct BtFactor {
  Matrix lc;  // wc = lc lc^T
  Matrix lo;  // wo = lo lo^T
  Svd cross;  // svd(lo^T lc); cross.s are the Hankel values
};

BtFactor bt_factor(const Matrix& wc, const Matrix& wo) {
  BtFactor f;
  f.lc = cholesky_psd(wc);
  f.lo = cholesky_psd(wo);
  f.cross = svd(gemm(f.lo, f.lc, true, false));
  return f;
}

Projection bt_slice(const BtFactor& f, std::size_t order) {
  const double top = f.cross.s.empty() ? 0.0 : f.cross.s[0];
  if (f.cross.s[order - 1] <= 1e-12 * top) {
    throw std::runtime_error("requested order exceeds numerical Hankel rank");
  }
  Projection p;
  p.u1 = gemm(f.lc, slice_cols(f.cross.v, 0, order));
  Matrix left = gemm(slice_cols(f.cross.u, 0, order), f.lo, true, true);
  for (std::size_t j = 0; j < order; ++j) {
    const double invroot = 1.0 / std::sqrt(f.cross.s[j]);
    for (std::size_t i = 0; i < p.u1.rows; ++i) p.u1(i, j) *= invroot;
    for (std::size_t k = 0; k < left.cols; ++k) left(j, k) *= invroot;
  }
  p.v1 = std::move(left);
  p.order = order;
  p.kind = ProjectionKind::petrov_galerkin;
  return p;
}

}  // namespace

Projection galerkin_from_gramian(const Matrix& w, std::size_t order) {
  require_order(order, w.rows, "galerkin_from_gramian");
  return galerkin_slice(galerkin_factor(w), order);
}

Projection balanced_truncation(const Matrix& wc, const Matrix& wo, std::size_t order) {
  require_order(order, wc.rows, "balanced_truncation");
  return bt_slice(bt_factor(wc, wo), order);
}

LtiSystem apply_projection(const LtiSystem& sys, const Projection& p) {
  if (p.u1.rows != sys.n || p.v1.cols != sys.n || p.u1.cols != p.order ||
      p.v1.rows != p.order) {
    throw std::invalid_argument("apply_projection: projection of order " +
                                std::to_string(p.order) + " does not fit a system of size " +
                                std::to_string(sys.n));
  }
  Matrix ar = gemm(gemm(p.v1, sys.a), p.u1);
  Matrix br = gemm(p.v1, sys.b);
  Matrix cr = gemm(sys.c, p.u1);
  return make_system(std::move(ar), std::move(br), std::move(cr));
}

const char* rom_method_name(RomMethod method) {
  switch (method) {
    case RomMethod::balanced_truncation:
      return "balanced_truncation";
    case RomMethod::cross_gramian:
      return "cross_gramian";
    case RomMethod::nonsym_cross_gramian:
      return "nonsym_cross_gramian";
    case RomMethod::embedding_cross_gramian:
      return "embedding_cross_gramian";
  }
  throw std::invalid_argument("rom_method_name: unknown method");
}

RomReport error_sweep(const LtiSystem& sys, const SimGrid& grid, const GramianSet& gramians,
                      const std::vector<std::size_t>& orders,
                      const std::vector<RomMethod>& methods) {
  for (std::size_t n : orders) require_order(n, sys.n, "error_sweep");

  const std::vector<Matrix> h_full = impulse_response(sys, grid);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  RomReport report;
  report.orders = orders;
  for (RomMethod method : methods) {
    RomCurve curve;
    curve.method = method;
    curve.errors.assign(orders.size(), nan);
    curve.stable.assign(orders.size(), false);
    curve.valid.assign(orders.size(), false);
    curve.notes.assign(orders.size(), "");

    // The decomposition behind a method is order-independent; build it once
    // and slice per order so a sweep costs one factorization per method.
    std::string unavailable;
    GalerkinFactor basis;
    BtFactor bt;
    try {
      switch (method) {
        case RomMethod::balanced_truncation:
          if (!gramians.wc || !gramians.wo) {
            unavailable = "controllability/observability pair not in gramian set";
          } else {
            bt = bt_factor(gramians.wc->w, gramians.wo->w);
          }
          break;
        case RomMethod::cross_gramian:
          if (!gramians.wx) {
            unavailable = "cross gramian not in gramian set (system must be square)";
          } else {
            basis = galerkin_factor(gramians.wx->w);
          }
          break;
        case RomMethod::nonsym_cross_gramian:
          basis = galerkin_factor(gramians.wz.w);
          break;
        case RomMethod::embedding_cross_gramian:
          if (!gramians.wx_embed) {
            unavailable = "embedding cross gramian not in gramian set";
          } else {
            basis = galerkin_factor(gramians.wx_embed->w);
          }
          break;
      }
    } catch (const std::exception& e) {
      unavailable = e.what();
    }
    if (!unavailable.empty()) {
      curve.notes.assign(orders.size(), unavailable);
      report.curves.push_back(std::move(curve));
      continue;
    }

    for (std::size_t k = 0; k < orders.size(); ++k) {
      try {
        Projection p = method == RomMethod::balanced_truncation
                           ? bt_slice(bt, orders[k])
                           : galerkin_slice(basis, orders[k]);
        LtiSystem rom = apply_projection(sys, p);
        curve.errors[k] = l2_rel_error(h_full, impulse_response(rom, grid), grid);
        curve.stable[k] = decay_certificate(rom, grid).stable;
        curve.valid[k] = true;
      } catch (const std::exception& e) {
        curve.notes[k] = e.what();
      }
    }
    report.curves.push_back(std::move(curve));
  }
  return report;
}

std::string rom_report_csv(const RomReport& report) {
  std::string out = "order,method,rel_l2_error,stable\n";
  char buf[64];
  for (std::size_t k = 0; k < report.orders.size(); ++k) {
    for (const RomCurve& curve : report.curves) {
      if (!curve.valid[k]) continue;  // rows carry finite errors only
      std::snprintf(buf, sizeof buf, "%.17g", curve.errors[k]);
      out += std::to_string(report.orders[k]);
      out += ',';
      out += rom_method_name(curve.method);
      out += ',';
      out += buf;
      out += ',';
      out += curve.stable[k] ? '1' : '0';
      out += '\n';
    }
  }
  return out;
}

}  // namespace gramor
