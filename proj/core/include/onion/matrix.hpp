#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "onion/error.hpp"
#include "onion/scalar.hpp"

namespace onion {

/// Small dense row-major matrix over any supported field.
template <Field S>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, FieldTraits<S>::from_int(0)) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<S> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(ErrorCode::SizeMismatch, "matrix data length");
  }
  Matrix(std::initializer_list<std::initializer_list<S>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw Error(ErrorCode::SizeMismatch, "ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldTraits<S>::from_int(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<S>& data() const noexcept { return data_; }

  double max_magnitude() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, FieldTraits<S>::magnitude(v));
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::SizeMismatch, "matrix product shapes");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (FieldTraits<S>::is_zero(a(i, k), 0.0, {})) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = out(i, j) + a(i, k) * b(k, j);
      }
    return out;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

template <Field To, Field From>
Matrix<To> matrix_cast(const Matrix<From>& m) {
  std::vector<To> data;
  data.reserve(m.data().size());
  for (const auto& v : m.data()) data.push_back(field_cast<To>(v));
  return Matrix<To>(m.rows(), m.cols(), std::move(data));
}

namespace detail {

/// Pivot row for column `col` among rows [from, rows): first nonzero entry in
/// exact fields, largest magnitude in floating point.
template <Field S>
std::optional<std::size_t> pick_pivot(const Matrix<S>& m, std::size_t col, std::size_t from,
                                      double scale, Tolerance tol) {
  std::optional<std::size_t> best;
  double best_mag = 0.0;
  for (std::size_t r = from; r < m.rows(); ++r) {
    if (FieldTraits<S>::is_zero(m(r, col), scale, tol)) continue;
    if constexpr (FieldTraits<S>::exact) {
      return r;
    } else {
      const double mag = FieldTraits<S>::magnitude(m(r, col));
      if (!best || mag > best_mag) {
        best = r;
        best_mag = mag;
      }
    }
  }
  return best;
}

template <Field S>
void swap_rows(Matrix<S>& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

}  // namespace detail

/// Result of Gaussian elimination carried alongside the transform that
/// produced it: transform * input == echelon, transform invertible.
template <Field S>
struct Echelon {
  Matrix<S> echelon;
  Matrix<S> transform;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_columns;
};

template <Field S>
Echelon<S> row_echelon(Matrix<S> m, Tolerance tol = {}) {
  Matrix<S> t = Matrix<S>::identity(m.rows());
  const double scale = m.max_magnitude();
  std::size_t row = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    const auto p = detail::pick_pivot(m, col, row, scale, tol);
    if (!p) {
      // Flush float residue in this column so later rows stay consistent.
      if constexpr (!FieldTraits<S>::exact) {
        for (std::size_t r = row; r < m.rows(); ++r) m(r, col) = S{};
      }
      continue;
    }
    detail::swap_rows(m, row, *p);
    detail::swap_rows(t, row, *p);
    const S pivot = m(row, col);
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      if (FieldTraits<S>::is_zero(m(r, col), 0.0, tol)) continue;
      const S factor = m(r, col) / pivot;
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) = m(r, c) - factor * m(row, c);
      for (std::size_t c = 0; c < t.cols(); ++c) t(r, c) = t(r, c) - factor * t(row, c);
      m(r, col) = FieldTraits<S>::from_int(0);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(t), row, std::move(pivots)};
}

template <Field S>
S determinant(Matrix<S> m) {
  if (!m.square()) throw Error(ErrorCode::SizeMismatch, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  S det = FieldTraits<S>::from_int(1);
  for (std::size_t col = 0; col < n; ++col) {
    // Only an exact zero column stops elimination; tolerance decisions are
    // left to the caller inspecting the returned value.
    const auto p = detail::pick_pivot(m, col, col, 0.0, Tolerance{0.0});
    if (!p) return FieldTraits<S>::from_int(0);
    if (*p != col) {
      detail::swap_rows(m, col, *p);
      det = -det;
    }
    const S pivot = m(col, col);
    det = det * pivot;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (FieldTraits<S>::is_zero(m(r, col), 0.0, Tolerance{0.0})) continue;
      const S factor = m(r, col) / pivot;
      for (std::size_t c = col + 1; c < n; ++c) m(r, c) = m(r, c) - factor * m(col, c);
    }
  }
  return det;
}

/// Solves a x = b for square invertible a. Throws SizeMismatch on a
/// singular system.
template <Field S>
std::vector<S> solve(Matrix<S> a, std::vector<S> b) {
  const std::size_t n = a.rows();
  if (!a.square() || b.size() != n) throw Error(ErrorCode::SizeMismatch, "solve shapes");
  for (std::size_t col = 0; col < n; ++col) {
    const auto p = detail::pick_pivot(a, col, col, 0.0, Tolerance{0.0});
    if (!p) throw Error(ErrorCode::SizeMismatch, "singular linear system");
    detail::swap_rows(a, col, *p);
    std::swap(b[col], b[*p]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const S factor = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) = a(r, c) - factor * a(col, c);
      b[r] = b[r] - factor * b[col];
    }
  }
  std::vector<S> x(n);
  for (std::size_t i = n; i-- > 0;) {
    S acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc = acc - a(i, c) * x[c];
    x[i] = acc / a(i, i);
  }
  return x;
}

template <Field S>
Matrix<S> inverse(const Matrix<S>& a) {
  const std::size_t n = a.rows();
  Matrix<S> inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<S> e(n, FieldTraits<S>::from_int(0));
    e[j] = FieldTraits<S>::from_int(1);
    const auto col = solve(a, std::move(e));
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = col[i];
  }
  return inv;
}

/// Singular values, descending.
std::vector<double> singular_values(const Matrix<Float>& m);

/// Conjugate transpose of the full left singular basis: rows are the left
/// singular vectors in descending singular-value order.
Matrix<Float> left_singular_basis_adjoint(const Matrix<Float>& m);

/// Eigenvalues of a Hermitian matrix, ascending.
std::vector<double> hermitian_eigenvalues(const Matrix<Float>& m);

template <Field S>
std::size_t rank(const Matrix<S>& m, Tolerance tol = {}) {
  if constexpr (std::same_as<S, Float>) {
    const auto sv = singular_values(m);
    if (sv.empty() || sv.front() == 0.0) return 0;
    return static_cast<std::size_t>(std::count_if(
        sv.begin(), sv.end(), [&](double s) { return s > tol.eps * sv.front(); }));
  } else {
    return row_echelon(m, tol).rank;
  }
}

}  // namespace onion
