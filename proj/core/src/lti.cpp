#include "gramor/lti.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gramor/linalg.hpp"
#include "gramor/rng.hpp"
#include "gramor/sim.hpp"

namespace gramor {

LtiSystem make_system(Matrix a, Matrix b, Matrix c) {
  if (a.rows != a.cols) {
    throw std::invalid_argument("make_system: A must be square, got " +
                                std::to_string(a.rows) + "x" + std::to_string(a.cols));
  }
  const std::size_t n = a.rows;
  if (n == 0) throw std::invalid_argument("make_system: empty state space");
  if (b.rows != n) {
    throw std::invalid_argument("make_system: B has " + std::to_string(b.rows) +
                                " rows, expected " + std::to_string(n));
  }
  if (c.cols != n) {
    throw std::invalid_argument("make_system: C has " + std::to_string(c.cols) +
                                " columns, expected " + std::to_string(n));
  }
  if (b.cols == 0 || c.rows == 0) {
    throw std::invalid_argument("make_system: input and output counts must be positive");
  }
  if (!all_finite(a) || !all_finite(b) || !all_finite(c)) {
    throw std::invalid_argument("make_system: non-finite entries");
  }
  LtiSystem sys;
  sys.n = n;
  sys.m = b.cols;
  sys.o = c.rows;
  sys.a = std::move(a);
  sys.b = std::move(b);
  sys.c = std::move(c);
  return sys;
}

SimGrid make_grid(double dt, double horizon) {
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(horizon)) {
    throw std::invalid_argument("make_grid: dt must be positive and finite");
  }
  if (horizon < 10.0 * dt) {
    throw std::invalid_argument("make_grid: horizon must be at least 10 dt");
  }
  const double ratio = horizon / dt;
  const auto steps = static_cast<std::size_t>(std::llround(ratio));
  if (std::fabs(static_cast<double>(steps) * dt - horizon) > 1e-12 * std::max(1.0, horizon)) {
    throw std::invalid_argument("make_grid: horizon is not an integer multiple of dt");
  }
  return SimGrid{dt, horizon, steps};
}

SystemShape system_shape(const LtiSystem& sys) {
  SystemShape shape;
  shape.square = (sys.m == sys.o);
  if (shape.square && sys.n == sys.a.rows) {
    const double asym = fro_norm(sub(sys.a, transpose(sys.a)));
    const double bsym = fro_norm(sub(sys.b, transpose(sys.c)));
    shape.state_space_symmetric = asym <= 1e-12 * std::max(1.0, fro_norm(sys.a)) &&
                                  bsym <= 1e-12 * std::max(1.0, fro_norm(sys.b));
  }
  if (shape.square) {
    try {
      shape.symmetric = gain_symmetric(sys);
    } catch (const std::exception&) {
      shape.symmetric = false;  // singular A: gain undefined
    }
  }
  return shape;
}

DecayCertificate decay_certificate(const LtiSystem& sys, const SimGrid& grid) {
  DecayCertificate cert;
  Matrix g = rk4_transition(sys.a, grid.dt);
  if (!all_finite(g)) {
    cert.blowup_time = grid.dt;
    return cert;
  }
  // One-window transition by binary powering; the certificate needs only the
  // flow map at the horizon, not intermediate nodes.
  Matrix phi = identity(sys.n);
  Matrix pw = g;
  std::size_t e = grid.steps;
  while (true) {
    if (e & 1u) {
      phi = gemm(phi, pw);
      if (!all_finite(phi)) {
        cert.blowup_time = grid.horizon;
        return cert;
      }
    }
    e >>= 1u;
    if (e == 0) break;
    pw = gemm(pw, pw);
    if (!all_finite(pw)) {
      cert.blowup_time = grid.horizon;
      return cert;
    }
  }

  auto max_col_norm = [](const Matrix& p) {
    double worst = 0.0;
    for (std::size_t j = 0; j < p.cols; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < p.rows; ++i) s += p(i, j) * p(i, j);
      worst = std::max(worst, std::sqrt(s));
    }
    return worst;
  };

  // Windows double until the canonical-basis responses have contracted by
  // 1e-6 or the window budget runs out.
  double windows = 1.0;
  for (int k = 0; k <= 12; ++k) {
    const double contraction = max_col_norm(phi);
    if (contraction <= 1e-6) {
      cert.stable = true;
      cert.contraction = contraction;
      cert.certified_horizon = grid.horizon * windows;
      return cert;
    }
    if (k == 12) {
      cert.contraction = contraction;
      cert.certified_horizon = grid.horizon * windows;
      return cert;
    }
    phi = gemm(phi, phi);
    windows *= 2.0;
    if (!all_finite(phi)) {
      cert.blowup_time = grid.horizon * windows;
      return cert;
    }
  }
  return cert;  // unreachable
}

bool is_stable(const LtiSystem& sys, const SimGrid& grid) {
  return decay_certificate(sys, grid).stable;
}

bool gain_symmetric(const LtiSystem& sys) {
  if (sys.m != sys.o) {
    throw std::invalid_argument("gain_symmetric: symmetry test undefined for M != O (" +
                                std::to_string(sys.m) + " inputs, " + std::to_string(sys.o) +
                                " outputs)");
  }
  Matrix gain = gemm(sys.c, lu_solve(sys.a, sys.b));
  const double defect = fro_norm(sub(gain, transpose(gain)));
  return defect <= 1e-10 * std::max(1.0, fro_norm(gain));
}

Matrix lehmer_matrix(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double lo = static_cast<double>(std::min(i, j) + 1);
      const double hi = static_cast<double>(std::max(i, j) + 1);
      a(i, j) = lo / hi;
    }
  }
  return a;
}

LtiSystem lehmer_system(std::size_t n, std::size_t m, std::uint64_t seed) {
  Matrix b = random_matrix(n, m, seed, 0, 0.0, 1.0);
  Matrix c = transpose(b);
  return make_system(scale(lehmer_matrix(n), -1.0), std::move(b), std::move(c));
}

LtiSystem random_system(std::size_t n, std::size_t m, std::size_t o,
                        std::uint64_t seed, AMode a_mode) {
  Matrix a;
  if (a_mode == AMode::lehmer) {
    a = scale(lehmer_matrix(n), -1.0);
  } else {
    a = random_matrix(n, n, seed, 2, -1.0, 1.0);
    double worst_row = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += std::fabs(a(i, j));
      worst_row = std::max(worst_row, s);
    }
    const double shift = 1.0 + worst_row;  // Gershgorin: every disc left of -1
    for (std::size_t i = 0; i < n; ++i) a(i, i) -= shift;
  }
  Matrix b = random_matrix(n, m, seed, 0, 0.0, 1.0);
  Matrix c = random_matrix(o, n, seed, 1, 0.0, 1.0);
  return make_system(std::move(a), std::move(b), std::move(c));
}

LtiSystem siso_subsystem(const LtiSystem& sys, std::size_t i, std::size_t j) {
  if (i >= sys.m || j >= sys.o) {
    throw std::invalid_argument("siso_subsystem: index out of range, input " +
                                std::to_string(i) + " of " + std::to_string(sys.m) +
                                ", output " + std::to_string(j) + " of " +
                                std::to_string(sys.o));
  }
  return make_system(sys.a, col_of(sys.b, i), row_of(sys.c, j));
}

LtiSystem averaged_siso(const LtiSystem& sys) {
  Matrix bbar(sys.n, 1);
  for (std::size_t i = 0; i < sys.n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < sys.m; ++j) s += sys.b(i, j);
    bbar(i, 0) = s;
  }
  Matrix cbar(1, sys.n);
  for (std::size_t k = 0; k < sys.n; ++k) {
    double s = 0.0;
    for (std::size_t j = 0; j < sys.o; ++j) s += sys.c(j, k);
    cbar(0, k) = s;
  }
  return make_system(sys.a, std::move(bbar), std::move(cbar));
}

LtiSystem embed_symmetric(const LtiSystem& sys, const Matrix& j) {
  if (j.rows != sys.n || j.cols != sys.n) {
    throw std::invalid_argument("embed_symmetric: symmetrizer must be " +
                                std::to_string(sys.n) + "x" + std::to_string(sys.n));
  }
  const double jsym = fro_norm(sub(j, transpose(j)));
  if (jsym > 1e-8 * std::max(1.0, fro_norm(j))) {
    throw std::invalid_argument("embed_symmetric: symmetrizer is not symmetric");
  }
  const double resid = fro_norm(sub(gemm(sys.a, j), gemm(j, sys.a, false, true)));
  if (resid > 1e-8 * fro_norm(sys.a) * fro_norm(j)) {
    throw std::runtime_error("embed_symmetric: symmetrizer residual ||A J - J A^T|| = " +
                             std::to_string(resid) + " exceeds tolerance");
  }
  Matrix jinv = lu_solve(j, identity(sys.n));  // throws when singular
  Matrix bhat = hstack(gemm(j, sys.c, false, true), sys.b);
  Matrix chat = vstack(sys.c, gemm(sys.b, jinv, true, false));
  return make_system(sys.a, std::move(bhat), std::move(chat));
}

}  // namespace gramor
