#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "panache/errors.hpp"
#include "panache/rational.hpp"

namespace panache {

template <typename Scalar>
using BasicVector = std::vector<Scalar>;

/// Dense row-major matrix over an exact field. Value type: every operation
/// returns a fresh matrix.
template <typename Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
      throw DimensionError("matrix entry count does not match shape");
    }
  }

  DenseMatrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static DenseMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// E_ij: a single 1 at (i, j).
  static DenseMatrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    DenseMatrix m(rows, cols);
    m(i, j) = 1;
    return m;
  }

  static DenseMatrix column(const BasicVector<Scalar>& v) { return {v.size(), 1, v}; }

  static DenseMatrix from_columns(std::size_t rows, const std::vector<BasicVector<Scalar>>& cols) {
    DenseMatrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static DenseMatrix from_rows(std::size_t cols, const std::vector<BasicVector<Scalar>>& rows) {
    DenseMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Block-diagonal sum.
  static DenseMatrix diagonal_sum(const std::vector<DenseMatrix>& blocks) {
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) r += b.rows(), c += b.cols();
    DenseMatrix m(r, c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
      m.set_block(r0, c0, b);
      r0 += b.rows();
      c0 += b.cols();
    }
    return m;
  }

  /// Assemble from a grid of blocks; each grid row must share heights, each
  /// grid column widths.
  static DenseMatrix from_blocks(const std::vector<std::vector<DenseMatrix>>& grid) {
    if (grid.empty()) return {};
    std::vector<std::size_t> heights(grid.size()), widths(grid[0].size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (grid[i].size() != widths.size()) throw DimensionError("ragged block grid");
      heights[i] = grid[i][0].rows();
    }
    for (std::size_t j = 0; j < widths.size(); ++j) widths[j] = grid[0][j].cols();
    std::size_t r = 0, c = 0;
    for (auto h : heights) r += h;
    for (auto w : widths) c += w;
    DenseMatrix m(r, c);
    std::size_t r0 = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      std::size_t c0 = 0;
      for (std::size_t j = 0; j < widths.size(); ++j) {
        const auto& b = grid[i][j];
        if (b.rows() != heights[i] || b.cols() != widths[j]) {
          throw DimensionError("block grid shape mismatch");
        }
        m.set_block(r0, c0, b);
        c0 += widths[j];
      }
      r0 += heights[i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<Scalar>& entries() const { return data_; }

  BasicVector<Scalar> col(std::size_t j) const {
    BasicVector<Scalar> v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  BasicVector<Scalar> row(std::size_t i) const {
    return BasicVector<Scalar>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  DenseMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("block out of range");
    DenseMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
    if (r0 + b.rows() > rows_ || c0 + b.cols() > cols_) throw DimensionError("block out of range");
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  DenseMatrix with_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) const {
    DenseMatrix m = *this;
    m.set_block(r0, c0, b);
    return m;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s == 0; });
  }

  bool is_identity() const { return is_square() && *this == identity(rows_); }

  /// Row-major flattening, the coordinate convention for spans of matrices.
  BasicVector<Scalar> vec() const { return data_; }

  static DenseMatrix unvec(std::size_t rows, std::size_t cols, const BasicVector<Scalar>& v) {
    return {rows, cols, v};
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) { return !(a == b); }

  /// Lexicographic order on (shape, entries); used only for deduplication.
  friend bool operator<(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return std::lexicographical_compare(a.data_.begin(), a.data_.end(), b.data_.begin(),
                                        b.data_.end());
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b);
    DenseMatrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
    return m;
  }

  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b);
    DenseMatrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] -= b.data_[k];
    return m;
  }

  friend DenseMatrix operator-(const DenseMatrix& a) {
    DenseMatrix m = a;
    for (auto& s : m.data_) s = -s;
    return m;
  }

  friend DenseMatrix operator*(const Scalar& s, const DenseMatrix& a) {
    DenseMatrix m = a;
    for (auto& e : m.data_) e *= s;
    return m;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("product of " + a.shape() + " and " + b.shape());
    }
    DenseMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    }
    return m;
  }

  friend BasicVector<Scalar> operator*(const DenseMatrix& a, const BasicVector<Scalar>& v) {
    if (a.cols_ != v.size()) throw DimensionError("matrix-vector shape mismatch");
    BasicVector<Scalar> out(a.rows_, Scalar(0));
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) out[i] += a(i, k) * v[k];
    return out;
  }

  std::string shape() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

 private:
  void require_same_shape(const DenseMatrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) {
      throw DimensionError("shape mismatch " + shape() + " vs " + b.shape());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using Matrix = DenseMatrix<Rational>;
using Vector = BasicVector<Rational>;

/// Kronecker product; index (i, k) of the result is i * b.rows() + k.
template <typename Scalar>
DenseMatrix<Scalar> kron(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  DenseMatrix<Scalar> m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return m;
}

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << to_string(m(i, j));
    os << "]";
  }
  return os << "]";
}

inline Vector vector_sum(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionError("vector length mismatch");
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

inline Vector vector_scale(const Rational& s, const Vector& a) {
  Vector out = a;
  for (auto& e : out) e *= s;
  return out;
}

inline bool vector_is_zero(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r == 0; });
}

}  // namespace panache
