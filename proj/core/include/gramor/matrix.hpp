#pragma once

#include <cstddef>
#include <vector>

namespace gramor {

// Dense real matrix, row-major. All successful operations leave only finite
// entries behind; anything that can produce NaN/Inf checks and throws instead.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // size rows*cols

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

Matrix identity(std::size_t n);
Matrix transpose(const Matrix& a);

// General matrix product with optional transposition of either argument.
Matrix gemm(const Matrix& a, const Matrix& b, bool transpose_a = false,
            bool transpose_b = false);

Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);

double fro_norm(const Matrix& a);
double max_abs(const Matrix& a);
bool all_finite(const Matrix& a);

// Column j as an n-by-1 matrix; row i as a 1-by-n matrix.
Matrix col_of(const Matrix& a, std::size_t j);
Matrix row_of(const Matrix& a, std::size_t i);

// [a b] side by side; [a; b] stacked.
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// Columns j0..j0+count-1 as a new matrix.
Matrix slice_cols(const Matrix& a, std::size_t j0, std::size_t count);

}  // namespace gramor
