#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "panache/errors.hpp"
#include "panache/matrix.hpp"

namespace panache {

/// Reduced row echelon form under the canonical pivot rule: scan columns left
/// to right, take the topmost remaining row with a nonzero entry, scale the
/// pivot to 1, clear the column above and below.
template <typename Scalar>
struct Echelon {
  DenseMatrix<Scalar> reduced;
  std::vector<std::size_t> pivot_cols;

  std::size_t rank() const { return pivot_cols.size(); }
};

template <typename Scalar>
Echelon<Scalar> rref(DenseMatrix<Scalar> m) {
  Echelon<Scalar> out;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    std::size_t p = row;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const Scalar inv = Scalar(1) / m(row, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, c) == 0) continue;
      const Scalar f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    out.pivot_cols.push_back(c);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Scalar>
std::size_t rank(const DenseMatrix<Scalar>& m) {
  return rref(m).rank();
}

/// Null space basis read off the RREF: one vector per free column, with a 1 in
/// that column.
template <typename Scalar>
std::vector<BasicVector<Scalar>> kernel_basis(const DenseMatrix<Scalar>& m) {
  const auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<BasicVector<Scalar>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BasicVector<Scalar> v(m.cols(), Scalar(0));
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename Scalar>
struct AffineSolution {
  BasicVector<Scalar> particular;
  std::vector<BasicVector<Scalar>> kernel;
};

/// Solves A t = b exactly. Absent when inconsistent; the particular solution
/// has every free variable set to zero.
template <typename Scalar>
std::optional<AffineSolution<Scalar>> solve_affine(const DenseMatrix<Scalar>& a,
                                                   const BasicVector<Scalar>& b) {
  if (a.rows() != b.size()) {
    throw DimensionError("solve_affine: " + a.shape() + " system with rhs of length " +
                         std::to_string(b.size()));
  }
  DenseMatrix<Scalar> aug(a.rows(), a.cols() + 1);
  aug.set_block(0, 0, a);
  for (std::size_t i = 0; i < b.size(); ++i) aug(i, a.cols()) = b[i];
  const auto e = rref(aug);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == a.cols()) return std::nullopt;
  AffineSolution<Scalar> sol;
  sol.particular.assign(a.cols(), Scalar(0));
  for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) {
    sol.particular[e.pivot_cols[r]] = e.reduced(r, a.cols());
  }
  sol.kernel = kernel_basis(a);
  return sol;
}

template <typename Scalar>
std::optional<DenseMatrix<Scalar>> try_inverse(const DenseMatrix<Scalar>& m) {
  if (!m.is_square()) throw DimensionError("inverse of non-square " + m.shape());
  const std::size_t n = m.rows();
  DenseMatrix<Scalar> aug(n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, DenseMatrix<Scalar>::identity(n));
  const auto e = rref(aug);
  if (e.rank() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1)) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

template <typename Scalar>
DenseMatrix<Scalar> inverse(const DenseMatrix<Scalar>& m) {
  auto inv = try_inverse(m);
  if (!inv) throw NotInvertibleError("matrix is singular");
  return *inv;
}

template <typename Scalar>
bool is_invertible(const DenseMatrix<Scalar>& m) {
  return m.is_square() && rank(m) == m.rows();
}

/// Indices of a maximal independent subset of the columns (pivot columns).
template <typename Scalar>
std::vector<std::size_t> independent_columns(const DenseMatrix<Scalar>& m) {
  return rref(m).pivot_cols;
}

/// A linear subspace of Scalar^n, stored as the nonzero rows of an RREF so
/// equal subspaces have identical bases.
template <typename Scalar>
class Subspace {
 public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

  Subspace(std::size_t ambient, const std::vector<BasicVector<Scalar>>& spanning)
      : ambient_(ambient) {
    if (!spanning.empty()) {
      const auto e = rref(DenseMatrix<Scalar>::from_rows(ambient, spanning));
      for (std::size_t r = 0; r < e.rank(); ++r) basis_.push_back(e.reduced.row(r));
    }
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasicVector<Scalar>>& basis() const { return basis_; }

  bool contains(const BasicVector<Scalar>& v) const {
    return Subspace(ambient_, with(v)).dim() == dim();
  }

  bool contains(const Subspace& other) const { return sum(other).dim() == dim(); }

  Subspace sum(const Subspace& other) const {
    auto all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return Subspace(ambient_, all);
  }

  std::size_t intersection_dim(const Subspace& other) const {
    return dim() + other.dim() - sum(other).dim();
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  std::vector<BasicVector<Scalar>> with(const BasicVector<Scalar>& v) const {
    auto all = basis_;
    all.push_back(v);
    return all;
  }

  std::size_t ambient_;
  std::vector<BasicVector<Scalar>> basis_;
};

using Span = Subspace<Rational>;

/// Affine map t ↦ residual(t) probed on 0 and the unit vectors: returns
/// (L, c) with residual(t) = L t + c. Callers guarantee affinity.
inline std::pair<Matrix, Vector> linearize(std::size_t unknowns,
                                           const std::function<Vector(const Vector&)>& residual) {
  Vector zero(unknowns, Rational(0));
  const Vector c = residual(zero);
  Matrix l(c.size(), unknowns);
  for (std::size_t k = 0; k < unknowns; ++k) {
    Vector e = zero;
    e[k] = 1;
    const Vector r = residual(e);
    if (r.size() != c.size()) throw DimensionError("linearize: residual length changed");
    for (std::size_t i = 0; i < c.size(); ++i) l(i, k) = r[i] - c[i];
  }
  return {l, c};
}

/// Solves residual(t) = 0 for an affine residual.
inline std::optional<AffineSolution<Rational>> solve_affine_residual(
    std::size_t unknowns, const std::function<Vector(const Vector&)>& residual) {
  auto [l, c] = linearize(unknowns, residual);
  return solve_affine(l, vector_scale(Rational(-1), c));
}

/// Concatenates the row-major entries of several matrices.
inline Vector flatten(const std::vector<Matrix>& ms) {
  Vector v;
  for (const auto& m : ms) v.insert(v.end(), m.entries().begin(), m.entries().end());
  return v;
}

/// Splits a flat vector back into equally shaped matrices.
inline std::vector<Matrix> unflatten(const Vector& v, std::size_t count, std::size_t rows,
                                     std::size_t cols) {
  if (v.size() != count * rows * cols) throw DimensionError("unflatten: length mismatch");
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < count; ++k) {
    out.emplace_back(rows, cols,
                     Vector(v.begin() + k * rows * cols, v.begin() + (k + 1) * rows * cols));
  }
  return out;
}

template <typename Scalar>
DenseMatrix<Scalar> power(const DenseMatrix<Scalar>& m, std::size_t k) {
  auto r = DenseMatrix<Scalar>::identity(m.rows());
  for (std::size_t i = 0; i < k; ++i) r = r * m;
  return r;
}

template <typename Scalar>
bool is_nilpotent(const DenseMatrix<Scalar>& m) {
  return m.is_square() && power(m, m.rows()).is_zero();
}

template <typename Scalar>
bool is_unipotent(const DenseMatrix<Scalar>& u) {
  return u.is_square() && is_nilpotent(u - DenseMatrix<Scalar>::identity(u.rows()));
}

/// exp of a nilpotent matrix as its finite Taylor polynomial.
template <typename Scalar>
DenseMatrix<Scalar> nilpotent_exp(const DenseMatrix<Scalar>& n) {
  if (!is_nilpotent(n)) throw NotNilpotentError("nilpotent_exp: input is not nilpotent");
  auto result = DenseMatrix<Scalar>::identity(n.rows());
  auto term = result;
  for (std::size_t k = 1; k < n.rows(); ++k) {
    term = Scalar(1) / Scalar(static_cast<long>(k)) * (term * n);
    result = result + term;
  }
  return result;
}

/// log of a unipotent matrix: sum_{k<n} (-1)^{k+1} (U-I)^k / k.
template <typename Scalar>
DenseMatrix<Scalar> nilpotent_log(const DenseMatrix<Scalar>& u) {
  if (!u.is_square()) throw DimensionError("nilpotent_log: non-square " + u.shape());
  const auto id = DenseMatrix<Scalar>::identity(u.rows());
  const auto n = u - id;
  if (!is_nilpotent(n)) throw NotUnipotentError("nilpotent_log: input is not unipotent");
  DenseMatrix<Scalar> result(u.rows(), u.cols());
  auto term = id;
  for (std::size_t k = 1; k < u.rows(); ++k) {
    term = term * n;
    const Scalar coeff = Scalar(k % 2 == 1 ? 1 : -1) / Scalar(static_cast<long>(k));
    result = result + coeff * term;
  }
  return result;
}

template <typename Scalar>
DenseMatrix<Scalar> bracket(const DenseMatrix<Scalar>& x, const DenseMatrix<Scalar>& y) {
  if (!x.is_square() || x.rows() != y.rows() || y.cols() != y.rows()) {
    throw DimensionError("bracket: need square matrices of equal size");
  }
  return x * y - y * x;
}

}  // namespace panache
