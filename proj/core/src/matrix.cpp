#include "gramor/matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gramor {

namespace {

std::string shape_of(const Matrix& a) {
  return std::to_string(a.rows) + "x" + std::to_string(a.cols);
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows != b.rows || a.cols != b.cols) {
    throw std::invalid_argument(std::string(who) + ": shape mismatch " +
                                shape_of(a) + " vs " + shape_of(b));
  }
}

}  // namespace

Matrix identity(std::size_t n) {
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1.0;
  return a;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
  return t;
}

Matrix gemm(const Matrix& a, const Matrix& b, bool transpose_a, bool transpose_b) {
  const std::size_t am = transpose_a ? a.cols : a.rows;
  const std::size_t ak = transpose_a ? a.rows : a.cols;
  const std::size_t bk = transpose_b ? b.cols : b.rows;
  const std::size_t bn = transpose_b ? b.rows : b.cols;
  if (ak != bk) {
    throw std::invalid_argument("gemm: inner dimensions disagree, " + shape_of(a) +
                                (transpose_a ? "^T" : "") + " * " + shape_of(b) +
                                (transpose_b ? "^T" : ""));
  }
  // Operands are materialized in plain orientation so the hot loop below is a
  // cache-friendly i-k-j accumulation for every flag combination. The per-entry
  // summation order over k is fixed ascending, which keeps column results
  // independent of how many columns are multiplied at once.
  const Matrix& an = transpose_a ? transpose(a) : a;
  const Matrix& bn_ = transpose_b ? transpose(b) : b;
  Matrix c(am, bn);
  for (std::size_t i = 0; i < am; ++i) {
    const double* arow = &an.data[i * ak];
    double* crow = &c.data[i * bn];
    for (std::size_t k = 0; k < ak; ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = &bn_.data[k * bn];
      for (std::size_t j = 0; j < bn; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

Matrix add(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "add");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] += b.data[i];
  return c;
}

Matrix sub(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "sub");
  Matrix c = a;
  for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
  return c;
}

Matrix scale(const Matrix& a, double s) {
  Matrix c = a;
  for (double& v : c.data) v *= s;
  return c;
}

double fro_norm(const Matrix& a) {
  double sum = 0.0;
  for (double v : a.data) sum += v * v;
  return std::sqrt(sum);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data) m = std::max(m, std::fabs(v));
  return m;
}

bool all_finite(const Matrix& a) {
  for (double v : a.data)
    if (!std::isfinite(v)) return false;
  return true;
}

Matrix col_of(const Matrix& a, std::size_t j) {
  if (j >= a.cols) throw std::invalid_argument("col_of: column index out of range");
  Matrix c(a.rows, 1);
  for (std::size_t i = 0; i < a.rows; ++i) c(i, 0) = a(i, j);
  return c;
}

Matrix row_of(const Matrix& a, std::size_t i) {
  if (i >= a.rows) throw std::invalid_argument("row_of: row index out of range");
  Matrix r(1, a.cols);
  for (std::size_t j = 0; j < a.cols; ++j) r(0, j) = a(i, j);
  return r;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows) {
    throw std::invalid_argument("hstack: row counts differ, " + shape_of(a) +
                                " vs " + shape_of(b));
  }
  Matrix c(a.rows, a.cols + b.cols);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols; ++j) c(i, a.cols + j) = b(i, j);
  }
  return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols != b.cols) {
    throw std::invalid_argument("vstack: column counts differ, " + shape_of(a) +
                                " vs " + shape_of(b));
  }
  Matrix c(a.rows + b.rows, a.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) c(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) c(a.rows + i, j) = b(i, j);
  return c;
}

Matrix slice_cols(const Matrix& a, std::size_t j0, std::size_t count) {
  if (j0 + count > a.cols) throw std::invalid_argument("slice_cols: range out of bounds");
  Matrix c(a.rows, count);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < count; ++j) c(i, j) = a(i, j0 + j);
  return c;
}

}  // namespace gramor
