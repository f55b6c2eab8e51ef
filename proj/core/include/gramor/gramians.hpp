#pragma once

#include <optional>
#include <vector>

#include "gramor/sim.hpp"

namespace gramor {

// Empirical system gramians, assembled from impulse and initial-state
// trajectories by trapezoidal quadrature on the grid. All computations
// stream per time node; state histories are never stored.

// Controllability gramian: sum over inputs i of the integral of
// x^i(t) x^i(t)^T with x^i the free response from x0 = b_i.
Matrix wc_empirical(const LtiSystem& sys, const SimGrid& grid);

// Observability gramian: entry (k,l) sums over outputs j the integral of
// y_j^k(t) y_j^l(t), with y^k the output response from x0 = e_k. The n
// initial-state trajectories are simulated once and shared.
Matrix wo_empirical(const LtiSystem& sys, const SimGrid& grid);

// Cross gramian of a square system: entry (p,k) sums over inputs i the
// integral of x_p^i(t) y_i^k(t). Requires m == o.
Matrix wx_empirical(const LtiSystem& sys, const SimGrid& grid);

enum class WzPath { subsystem_sum, averaged_fast_path };

// Non-symmetric cross gramian: the sum of the cross gramians of all m x o
// single-channel subsystems. subsystem_sum accumulates every pair from one
// shared set of trajectories; averaged_fast_path computes the cross gramian
// of the channel-averaged single-channel system instead. The two paths agree
// up to floating-point noise for any B and C.
Matrix wz_nonsymmetric(const LtiSystem& sys, const SimGrid& grid, WzPath path);

// Cross gramian of the symmetric embedding of the system under the
// symmetrizer j (see embed_symmetric); defined for any m, o.
Matrix wx_embedding(const LtiSystem& sys, const Matrix& j, const SimGrid& grid);

// All single-channel subsystem gramians on the shared grid and shared
// trajectories: wc[i] for input i, wo[j] for output j, wx[i*o + j] for the
// (input i, output j) pair. Summing wc, wo, or the diagonal wx entries
// reproduces the full-system gramians exactly (identical accumulation).
struct SubsystemGramians {
  std::vector<Matrix> wc;
  std::vector<Matrix> wo;
  std::vector<Matrix> wx;
};
SubsystemGramians subsystem_gramian_table(const LtiSystem& sys, const SimGrid& grid);

enum class ResidualForm { cross, controllability, observability };

// Normalized residual of the matrix equation a gramian solves:
//   cross:            || A w + w A   + L R || / max(1, ||L R||)
//   controllability:  || A w + w A^T + L R || / max(1, ||L R||)
//   observability:    || A^T w + w A + L R || / max(1, ||L R||)
// with L = rhs_left, R = rhs_right (e.g. B and C for the cross gramian,
// B and B^T for controllability, C^T and C for observability).
double sylvester_residual(const Matrix& a, const Matrix& w, const Matrix& rhs_left,
                          const Matrix& rhs_right, ResidualForm form);

// Hankel singular values from the gramian pair, computed symmetrically as
// the square roots of the eigenvalues of F^T wo F with F F^T = wc; negative
// quadrature noise is clamped to zero. Descending.
std::vector<double> hankel_values(const Matrix& wc, const Matrix& wo);

enum class GramianMethod { empirical, averaged_fast_path };

struct GramianEntry {
  Matrix w;
  GramianMethod method = GramianMethod::empirical;
};

// The gramians one reduction run works from. wx requires a square system and
// wx_embed a symmetrizer, so either may be absent; wz exists for any shape.
struct GramianSet {
  std::optional<GramianEntry> wc;
  std::optional<GramianEntry> wo;
  std::optional<GramianEntry> wx;
  std::optional<GramianEntry> wx_embed;
  GramianEntry wz;
  SimGrid grid;
};

}  // namespace gramor
