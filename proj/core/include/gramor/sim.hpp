#pragma once

#include <vector>

#include "gramor/lti.hpp"

namespace gramor {

// Time-discrete trajectory on a fixed grid. Node k holds the values at
// t = k dt; node count is grid.steps + 1. Columns are independent batch
// members (one per initial state), so states[k] is n x batch and outputs[k]
// is o x batch.
struct Trajectory {
  SimGrid grid;
  std::vector<Matrix> states;   // retained only on request
  std::vector<Matrix> outputs;  // always present
};

// One-step transition matrix of classical fixed-step RK4 on x' = A x:
// I + hA + (hA)^2/2 + (hA)^3/6 + (hA)^4/24. Stepping with this matrix is
// the classical RK4 update evaluated in matrix form.
Matrix rk4_transition(const Matrix& a, double dt);

// Free response (u = 0) from the initial states in the columns of x0.
// Throws on divergence with the step index.
Trajectory simulate_free(const LtiSystem& sys, const Matrix& x0, const SimGrid& grid,
                         bool keep_states);

// Impulse response h(t) = C e^{At} B realized as initial-state responses
// x0 = B (exact for zero feed-forward); element k is the o x m matrix h(t_k).
std::vector<Matrix> impulse_response(const LtiSystem& sys, const SimGrid& grid);

// Trapezoidal weights on the grid nodes: dt * [1/2, 1, ..., 1, 1/2].
std::vector<double> trapezoid_weights(const SimGrid& grid);

// Relative L2 distance between two impulse-response sequences, all channels
// aggregated in the Frobenius norm:
//   sqrt(sum_k w_k ||hf_k - hr_k||_F^2) / sqrt(sum_k w_k ||hf_k||_F^2).
double l2_rel_error(const std::vector<Matrix>& h_full, const std::vector<Matrix>& h_red,
                    const SimGrid& grid);

// Trapezoidal approximation of the integral of left(t) right(t)^T over the
// grid: sum_k w_k L_k R_k^T for node sequences with equal batch widths.
Matrix quad_traj_outer(const std::vector<Matrix>& left, const std::vector<Matrix>& right,
                       const SimGrid& grid);

}  // namespace gramor
