#pragma once

#include <vector>

#include "gramor/matrix.hpp"

namespace gramor {

// Singular value decomposition a = u * diag(s) * v^T with column-orthonormal
// u (rows(a) x min-dim when rows >= cols, see svd()) and v; s descending, >= 0.
struct Svd {
  Matrix u;
  std::vector<double> s;
  Matrix v;
};

// Symmetric eigendecomposition a = vectors * diag(values) * vectors^T;
// values ordered by descending magnitude (ties: larger value first).
struct EigSym {
  std::vector<double> values;
  Matrix vectors;
};

// Solve a * x = rhs by LU with partial pivoting.
Matrix lu_solve(const Matrix& a, const Matrix& rhs);

// Factor a symmetric positive semidefinite matrix as f * f^T = a using
// diagonally pivoted Cholesky. The factor is lower-triangular up to a row
// permutation; trailing columns are zero when the input is rank deficient.
// Diagonal entries more negative than -1e-10 * ||a||_F reject the input.
Matrix cholesky_psd(const Matrix& a);

// Cyclic Jacobi for symmetric matrices. Input must be symmetric to 1e-8
// relative; convergence when every off-diagonal is <= 1e-14 * ||a||_F,
// hard cap 60 sweeps.
EigSym eig_sym(const Matrix& a);

// One-sided (Hestenes) Jacobi SVD, cyclic sweeps, convergence when every
// column-pair coupling |a_i . a_j| is <= 1e-14 * ||a_i|| * ||a_j||, hard cap
// 60 sweeps. Matrices with rows < cols are handled by factoring the transpose.
Svd svd(const Matrix& a);

}  // namespace gramor
