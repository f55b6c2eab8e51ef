#pragma once

#include <cstdint>

#include "gramor/matrix.hpp"

namespace gramor {

// Linear time-invariant system  x' = A x + B u,  y = C x  with zero
// feed-forward. n states, m inputs, o outputs.
struct LtiSystem {
  Matrix a;  // n x n
  Matrix b;  // n x m
  Matrix c;  // o x n
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t o = 0;
};

// Validates dimension consistency and finiteness.
LtiSystem make_system(Matrix a, Matrix b, Matrix c);

// Fixed-step simulation grid; steps * dt spans [0, horizon].
struct SimGrid {
  double dt = 0.0;
  double horizon = 0.0;
  std::size_t steps = 0;
};

// dt > 0, horizon >= 10 dt, horizon an integer multiple of dt to 1e-12.
SimGrid make_grid(double dt, double horizon);

struct SystemShape {
  bool square = false;                 // m == o
  bool symmetric = false;              // square and the gain C A^-1 B is symmetric
  bool state_space_symmetric = false;  // A = A^T and B = C^T
};

SystemShape system_shape(const LtiSystem& sys);

// Decay-certificate stability test: the canonical-basis free responses must
// contract by 1e-6 over some doubled multiple (up to 2^12) of the grid
// horizon, computed by repeated squaring of the one-window transition matrix.
// Divergence (non-finite states) reports unstable.
bool is_stable(const LtiSystem& sys, const SimGrid& grid);

struct DecayCertificate {
  bool stable = false;
  double contraction = 0.0;      // max column 2-norm of the transition at the certified horizon
  double certified_horizon = 0;  // horizon * windows examined when stable
  double blowup_time = 0;        // earliest window end with non-finite entries, 0 if none
};

DecayCertificate decay_certificate(const LtiSystem& sys, const SimGrid& grid);

// True iff the system gain G = C A^-1 B is symmetric to 1e-10 relative.
// Only defined for m == o.
bool gain_symmetric(const LtiSystem& sys);

// Positive Lehmer matrix, entry (i,j) = min(i+1,j+1)/max(i+1,j+1) (0-based).
Matrix lehmer_matrix(std::size_t n);

// A = negative Lehmer, B with U(0,1) entries under the seed, C = B^T.
LtiSystem lehmer_system(std::size_t n, std::size_t m, std::uint64_t seed);

enum class AMode { lehmer, stable_random };

// a_mode lehmer: A = negative Lehmer; a_mode stable_random: A = R - (1 +
// max absolute row sum of R) I with R ~ U(-1,1), Hurwitz by Gershgorin.
// B is n x m and C is o x n with U(0,1) entries, independent streams.
LtiSystem random_system(std::size_t n, std::size_t m, std::size_t o,
                        std::uint64_t seed, AMode a_mode);

// Single-input single-output subsystem (A, column i of B, row j of C),
// 0-based indices.
LtiSystem siso_subsystem(const LtiSystem& sys, std::size_t i, std::size_t j);

// SISO system (A, row sums of B, column sums of C).
LtiSystem averaged_siso(const LtiSystem& sys);

// Square embedding with input matrix [J C^T, B] and output matrix
// [C; B^T J^-1]. j must be symmetric, nonsingular, and satisfy
// ||A J - J A^T|| <= 1e-8 ||A|| ||J||.
LtiSystem embed_symmetric(const LtiSystem& sys, const Matrix& j);

}  // namespace gramor
