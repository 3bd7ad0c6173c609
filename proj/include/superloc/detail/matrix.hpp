#pragma once

#include <vector>

#include "superloc/exact.hpp"

namespace superloc::detail {

/// Small dense matrix over Q(i); row-major, exact arithmetic only.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<ComplexRational> data;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = ComplexRational(1);
    return m;
  }

  ComplexRational& at(size_t r, size_t c) { return data[r * cols + c]; }
  const ComplexRational& at(size_t r, size_t c) const { return data[r * cols + c]; }

  std::vector<ComplexRational> column(size_t c) const {
    std::vector<ComplexRational> out(rows);
    for (size_t r = 0; r < rows; ++r) out[r] = at(r, c);
    return out;
  }

  bool operator==(const Matrix&) const = default;
};

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) fail(ErrorCode::Dimension, "matrix product shape mismatch");
  Matrix out(a.rows, b.cols);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t k = 0; k < a.cols; ++k) {
      if (a.at(i, k).is_zero()) continue;
      for (size_t j = 0; j < b.cols; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

inline std::vector<ComplexRational> operator*(const Matrix& a,
                                              const std::vector<ComplexRational>& v) {
  if (a.cols != v.size()) fail(ErrorCode::Dimension, "matrix-vector shape mismatch");
  std::vector<ComplexRational> out(a.rows);
  for (size_t i = 0; i < a.rows; ++i)
    for (size_t k = 0; k < a.cols; ++k)
      if (!a.at(i, k).is_zero()) out[i] += a.at(i, k) * v[k];
  return out;
}

/// Gauss-Jordan inverse; throws on a singular input.
inline Matrix inverse(Matrix m) {
  if (m.rows != m.cols) fail(ErrorCode::Dimension, "inverse of non-square matrix");
  size_t n = m.rows;
  Matrix inv = Matrix::identity(n);
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && m.at(pivot, col).is_zero()) ++pivot;
    if (pivot == n) fail(ErrorCode::Nondegeneracy, "singular matrix");
    for (size_t j = 0; j < n; ++j) {
      std::swap(m.at(col, j), m.at(pivot, j));
      std::swap(inv.at(col, j), inv.at(pivot, j));
    }
    ComplexRational d = m.at(col, col).inverse();
    for (size_t j = 0; j < n; ++j) {
      m.at(col, j) *= d;
      inv.at(col, j) *= d;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || m.at(r, col).is_zero()) continue;
      ComplexRational factor = m.at(r, col);
      for (size_t j = 0; j < n; ++j) {
        m.at(r, j) -= factor * m.at(col, j);
        inv.at(r, j) -= factor * inv.at(col, j);
      }
    }
  }
  return inv;
}

}  // namespace superloc::detail
