#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gramor/gramians.hpp"
#include "gramor/lti.hpp"
#include "gramor/matrix.hpp"

namespace gramor {

enum class ProjectionKind { galerkin, petrov_galerkin };

// Truncated projection pair: u1 reconstructs full states from reduced ones,
// v1 restricts. galerkin keeps v1 = u1^T with orthonormal u1; petrov_galerkin
// keeps the bi-orthogonality v1 u1 = I.
struct Projection {
  Matrix u1;  // full_dim x order
  Matrix v1;  // order x full_dim
  std::size_t order = 0;
  ProjectionKind kind = ProjectionKind::galerkin;
};

// One-sided Galerkin projection onto the leading left singular vectors of a
// (cross-type) gramian.
Projection galerkin_from_gramian(const Matrix& w, std::size_t order);

// Square-root balanced truncation from a controllability/observability pair:
// with Lc, Lo the semidefinite Cholesky factors and svd(Lo^T Lc) = U S V^T,
// u1 = Lc V1 S1^{-1/2} and v1 = S1^{-1/2} U1^T Lo^T. Orders whose Hankel
// value falls below 1e-12 of the largest are refused.
Projection balanced_truncation(const Matrix& wc, const Matrix& wo, std::size_t order);

// Reduced model (v1 A u1, v1 B, C u1).
LtiSystem apply_projection(const LtiSystem& sys, const Projection& p);

// Reduction strategies a sweep can evaluate; each draws on one entry of the
// GramianSet.
enum class RomMethod {
  balanced_truncation,
  cross_gramian,
  nonsym_cross_gramian,
  embedding_cross_gramian,
};

const char* rom_method_name(RomMethod method);

// Error curve of one method over the sweep orders. Entries align with
// RomReport::orders; invalid entries carry NaN error, stable = false, and a
// note saying why (missing gramian, order past the numerical Hankel rank).
struct RomCurve {
  RomMethod method = RomMethod::balanced_truncation;
  std::vector<double> errors;
  std::vector<bool> stable;
  std::vector<bool> valid;
  std::vector<std::string> notes;
};

struct RomReport {
  std::vector<std::size_t> orders;
  std::vector<RomCurve> curves;
};

// For each requested method and order: build the projection, form the
// reduced model, and record the relative L2 impulse-response error against
// the full model plus the reduced model's decay certificate. The full-model
// response is simulated once. A method whose gramian is absent gets invalid
// entries; the sweep continues for the others.
RomReport error_sweep(const LtiSystem& sys, const SimGrid& grid, const GramianSet& gramians,
                      const std::vector<std::size_t>& orders,
                      const std::vector<RomMethod>& methods);

// CSV with header "order,method,rel_l2_error,stable", one row per valid
// (order, method) entry in sweep order; errors printed with 17 significant
// digits. Entries whose projection could not be built emit no row, so every
// row carries a finite error.
std::string rom_report_csv(const RomReport& report);

}  // namespace gramor
