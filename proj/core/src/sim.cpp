#include "gramor/sim.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gramor {

Matrix rk4_transition(const Matrix& a, double dt) {
  const std::size_t n = a.rows;
  Matrix ha = scale(a, dt);
  // Horner form of I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24.
  Matrix g = add(identity(n), scale(ha, 0.25));
  g = add(identity(n), scale(gemm(ha, g), 1.0 / 3.0));
  g = add(identity(n), scale(gemm(ha, g), 0.5));
  g = add(identity(n), gemm(ha, g));
  return g;
}

Trajectory simulate_free(const LtiSystem& sys, const Matrix& x0, const SimGrid& grid,
                         bool keep_states) {
  if (x0.rows != sys.n) {
    throw std::invalid_argument("simulate_free: initial state has " +
                                std::to_string(x0.rows) + " rows, expected " +
                                std::to_string(sys.n));
  }
  Trajectory traj;
  traj.grid = grid;
  traj.outputs.reserve(grid.steps + 1);
  if (keep_states) traj.states.reserve(grid.steps + 1);

  const Matrix g = rk4_transition(sys.a, grid.dt);
  Matrix x = x0;
  for (std::size_t k = 0;; ++k) {
    if (!all_finite(x)) {
      throw std::runtime_error("simulate_free: divergence at step " + std::to_string(k));
    }
    if (keep_states) traj.states.push_back(x);
    traj.outputs.push_back(gemm(sys.c, x));
    if (k == grid.steps) break;
    x = gemm(g, x);
  }
  return traj;
}

std::vector<Matrix> impulse_response(const LtiSystem& sys, const SimGrid& grid) {
  return simulate_free(sys, sys.b, grid, false).outputs;
}

std::vector<double> trapezoid_weights(const SimGrid& grid) {
  std::vector<double> w(grid.steps + 1, grid.dt);
  w.front() = 0.5 * grid.dt;
  w.back() = 0.5 * grid.dt;
  return w;
}

double l2_rel_error(const std::vector<Matrix>& h_full, const std::vector<Matrix>& h_red,
                    const SimGrid& grid) {
  if (h_full.size() != grid.steps + 1 || h_red.size() != h_full.size()) {
    throw std::invalid_argument("l2_rel_error: node counts disagree with the grid");
  }
  const std::vector<double> w = trapezoid_weights(grid);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < h_full.size(); ++k) {
    const Matrix& f = h_full[k];
    const Matrix& r = h_red[k];
    if (f.rows != r.rows || f.cols != r.cols) {
      throw std::invalid_argument("l2_rel_error: channel dimensions disagree at node " +
                                  std::to_string(k));
    }
    double dk = 0.0;
    double fk = 0.0;
    for (std::size_t t = 0; t < f.data.size(); ++t) {
      const double d = f.data[t] - r.data[t];
      dk += d * d;
      fk += f.data[t] * f.data[t];
    }
    num += w[k] * dk;
    den += w[k] * fk;
  }
  if (den == 0.0) throw std::runtime_error("l2_rel_error: reference response is identically zero");
  return std::sqrt(num) / std::sqrt(den);
}

Matrix quad_traj_outer(const std::vector<Matrix>& left, const std::vector<Matrix>& right,
                       const SimGrid& grid) {
  if (left.size() != grid.steps + 1 || right.size() != left.size()) {
    throw std::invalid_argument("quad_traj_outer: node counts disagree with the grid");
  }
  const std::size_t rows = left.front().rows;
  const std::size_t cols = right.front().rows;
  const std::size_t batch = left.front().cols;
  if (right.front().cols != batch) {
    throw std::invalid_argument("quad_traj_outer: batch widths disagree");
  }
  const std::vector<double> w = trapezoid_weights(grid);
  Matrix acc(rows, cols);
  for (std::size_t k = 0; k < left.size(); ++k) {
    const Matrix& l = left[k];
    const Matrix& r = right[k];
    if (l.rows != rows || r.rows != cols || l.cols != batch || r.cols != batch) {
      throw std::invalid_argument("quad_traj_outer: node dimensions disagree at node " +
                                  std::to_string(k));
    }
    const double wk = w[k];
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t c = 0; c < batch; ++c) {
        const double li = wk * l(i, c);
        if (li == 0.0) continue;
        for (std::size_t j = 0; j < cols; ++j) acc(i, j) += li * r(j, c);
      }
    }
  }
  return acc;
}

}  // namespace gramor
