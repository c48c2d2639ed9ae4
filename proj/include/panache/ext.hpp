#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "panache/errors.hpp"
#include "panache/linalg.hpp"
#include "panache/rep.hpp"

namespace panache {

/// [[top, block], [0, bottom]].
inline Matrix upper_block(const Matrix& top, const Matrix& block, const Matrix& bottom) {
  return Matrix::from_blocks({{top, block}, {Matrix::zero(bottom.rows(), top.cols()), bottom}});
}

/// Inverse of [[top, block], [0, bottom]] given the diagonal inverses.
inline Matrix upper_block_inverse(const Matrix& top_inv, const Matrix& block,
                                  const Matrix& bottom_inv) {
  return upper_block(top_inv, -(top_inv * block * bottom_inv), bottom_inv);
}

/// Upper-right corners of every relator evaluated on the block-triangular
/// images [[rho_top(g), blocks[g]], [0, rho_bottom(g)]], concatenated.
inline Vector relator_corners(const Representation& top, const Representation& bottom,
                              const std::vector<Matrix>& blocks) {
  const auto& pres = top.presentation();
  std::vector<Matrix> images, inverses;
  for (std::size_t g = 0; g < pres.generator_count(); ++g) {
    images.push_back(upper_block(top.image(g), blocks[g], bottom.image(g)));
    inverses.push_back(
        upper_block_inverse(top.inverse_image(g), blocks[g], bottom.inverse_image(g)));
  }
  std::vector<Matrix> corners;
  for (const auto& r : pres.relators()) {
    Matrix m = Matrix::identity(top.dim() + bottom.dim());
    for (const auto& l : pres.parse(r)) {
      m = m * (l.inverse ? inverses[l.generator] : images[l.generator]);
    }
    corners.push_back(m.block(0, top.dim(), top.dim(), bottom.dim()));
  }
  return flatten(corners);
}

/// A 1-extension of quot by sub in block form: sub occupies the first
/// coordinates, generator g acts by [[rho_sub(g), blocks[g]], [0, rho_quot(g)]].
struct Cocycle {
  Representation sub;
  Representation quot;
  std::vector<Matrix> blocks;

  static Cocycle split(const Representation& quot, const Representation& sub) {
    return {sub, quot,
            std::vector<Matrix>(sub.presentation().generator_count(),
                                Matrix::zero(sub.dim(), quot.dim()))};
  }

  Representation total() const {
    std::vector<Matrix> images;
    for (std::size_t g = 0; g < blocks.size(); ++g) {
      images.push_back(upper_block(sub.image(g), blocks[g], quot.image(g)));
    }
    return {sub.presentation(), sub.dim() + quot.dim(), std::move(images)};
  }

  bool satisfies_relators() const { return vector_is_zero(relator_corners(sub, quot, blocks)); }

  /// j : sub -> total.
  Morphism inclusion() const {
    const std::size_t d = sub.dim() + quot.dim();
    return {sub, total(), Matrix::identity(d).block(0, 0, d, sub.dim())};
  }

  /// π : total -> quot.
  Morphism projection() const {
    const std::size_t d = sub.dim() + quot.dim();
    return {total(), quot, Matrix::identity(d).block(sub.dim(), 0, quot.dim(), d)};
  }
};

class ExtSpace;

/// An element of Ext^1(quot, sub): coordinates on the quotient basis of an
/// ExtSpace.
class ExtClass {
 public:
  ExtClass(std::shared_ptr<const ExtSpace> space, Vector coordinates);

  const std::shared_ptr<const ExtSpace>& space() const { return space_; }
  const Vector& coordinates() const { return coordinates_; }
  bool is_zero() const { return vector_is_zero(coordinates_); }

  /// Cocycle representative: the combination of quotient basis cocycles.
  Cocycle representative() const;

  friend bool operator==(const ExtClass& a, const ExtClass& b);

 private:
  std::shared_ptr<const ExtSpace> space_;
  Vector coordinates_;
};

/// Ext^1(quot, sub) as Z^1 / B^1. Z^1 is the kernel of the relator
/// linearization, B^1 = {f rho_quot - rho_sub f}; the quotient basis
/// completes B^1 to Z^1 greedily in kernel-basis order.
class ExtSpace : public std::enable_shared_from_this<ExtSpace> {
 public:
  static std::shared_ptr<const ExtSpace> create(const Representation& quot,
                                                const Representation& sub) {
    return std::shared_ptr<const ExtSpace>(new ExtSpace(quot, sub));
  }

  const Representation& sub() const { return sub_; }
  const Representation& quot() const { return quot_; }
  std::size_t dim() const { return quotient_basis_.size(); }
  std::size_t z1_dim() const { return z1_basis_.size(); }
  std::size_t b1_dim() const { return b1_basis_.size(); }
  std::size_t unknowns() const { return generators() * sub_.dim() * quot_.dim(); }

  const std::vector<Vector>& z1_basis() const { return z1_basis_; }
  const std::vector<Vector>& b1_basis() const { return b1_basis_; }
  const std::vector<Vector>& quotient_basis() const { return quotient_basis_; }

  std::vector<Matrix> blocks_of(const Vector& v) const {
    return unflatten(v, generators(), sub_.dim(), quot_.dim());
  }

  Cocycle cocycle(const Vector& v) const { return {sub_, quot_, blocks_of(v)}; }

  bool is_cocycle(const std::vector<Matrix>& blocks) const {
    check_shape(blocks);
    return vector_is_zero(relator_corners(sub_, quot_, blocks));
  }

  bool is_coboundary(const std::vector<Matrix>& blocks) const {
    return is_cocycle(blocks) && vector_is_zero(coordinates(blocks));
  }

  /// Quotient coordinates of a cocycle; throws if the blocks are not a cocycle.
  Vector coordinates(const std::vector<Matrix>& blocks) const {
    if (!is_cocycle(blocks)) throw InconsistentStateError("blocks do not satisfy the relators");
    const auto sol = solve_affine(decomposition_, flatten(blocks));
    if (!sol) throw InconsistentStateError("cocycle outside Z^1 span");
    return Vector(sol->particular.begin() + static_cast<long>(b1_basis_.size()),
                  sol->particular.end());
  }

  ExtClass class_of(const std::vector<Matrix>& blocks) const {
    return {shared_from_this(), coordinates(blocks)};
  }

  ExtClass class_of(const Cocycle& c) const {
    if (!(c.sub == sub_) || !(c.quot == quot_)) throw MismatchError("cocycle over other objects");
    return class_of(c.blocks);
  }

  ExtClass zero() const { return {shared_from_this(), Vector(dim(), Rational(0))}; }

  ExtClass basis_class(std::size_t i) const {
    Vector v(dim(), Rational(0));
    v.at(i) = 1;
    return {shared_from_this(), v};
  }

  std::vector<Matrix> representative(const Vector& coords) const {
    if (coords.size() != dim()) throw DimensionError("coordinate length mismatch");
    Vector v(unknowns(), Rational(0));
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == 0) continue;
      v = vector_sum(v, vector_scale(coords[i], quotient_basis_[i]));
    }
    return blocks_of(v);
  }

  /// Coboundary of f : quot -> sub (as a plain matrix, sub.dim x quot.dim).
  std::vector<Matrix> coboundary(const Matrix& f) const {
    std::vector<Matrix> out;
    for (std::size_t g = 0; g < generators(); ++g) {
      out.push_back(f * quot_.image(g) - sub_.image(g) * f);
    }
    return out;
  }

  bool same_objects(const ExtSpace& other) const {
    return sub_ == other.sub_ && quot_ == other.quot_;
  }

 private:
  ExtSpace(const Representation& quot, const Representation& sub) : sub_(sub), quot_(quot) {
    require_same_group(sub, quot);
    const std::size_t n = unknowns();
    auto [relator_map, unused] = linearize(
        n, [&](const Vector& t) { return relator_corners(sub_, quot_, blocks_of(t)); });
    (void)unused;
    z1_basis_ = kernel_basis(relator_map);

    const std::size_t fdim = sub_.dim() * quot_.dim();
    auto [cob, unused2] = linearize(
        fdim, [&](const Vector& t) { return flatten(coboundary(Matrix(sub_.dim(), quot_.dim(), t))); });
    (void)unused2;
    for (auto c : independent_columns(cob)) b1_basis_.push_back(cob.col(c));

    std::vector<Vector> cols = b1_basis_;
    std::size_t r = b1_basis_.size();
    for (const auto& z : z1_basis_) {
      cols.push_back(z);
      const auto candidate = rank(Matrix::from_columns(n, cols));
      if (candidate > r) {
        quotient_basis_.push_back(z);
        r = candidate;
      } else {
        cols.pop_back();
      }
    }
    decomposition_ = Matrix::from_columns(n, cols);
  }

  std::size_t generators() const { return sub_.presentation().generator_count(); }

  void check_shape(const std::vector<Matrix>& blocks) const {
    if (blocks.size() != generators()) throw DimensionError("need one block per generator");
    for (const auto& b : blocks) {
      if (b.rows() != sub_.dim() || b.cols() != quot_.dim()) {
        throw DimensionError("cocycle block has shape " + b.shape());
      }
    }
  }

  Representation sub_;
  Representation quot_;
  std::vector<Vector> z1_basis_;
  std::vector<Vector> b1_basis_;
  std::vector<Vector> quotient_basis_;
  Matrix decomposition_;
};

inline ExtClass::ExtClass(std::shared_ptr<const ExtSpace> space, Vector coordinates)
    : space_(std::move(space)), coordinates_(std::move(coordinates)) {
  if (coordinates_.size() != space_->dim()) throw DimensionError("coordinate length mismatch");
}

inline Cocycle ExtClass::representative() const {
  return {space_->sub(), space_->quot(), space_->representative(coordinates_)};
}

inline bool operator==(const ExtClass& a, const ExtClass& b) {
  return a.space_->same_objects(*b.space_) && a.coordinates_ == b.coordinates_;
}

inline std::shared_ptr<const ExtSpace> ext_space(const Representation& quot,
                                                 const Representation& sub) {
  return ExtSpace::create(quot, sub);
}

inline void require_same_space(const ExtClass& c, const ExtClass& d) {
  if (!c.space()->same_objects(*d.space())) throw MismatchError("classes in different Ext spaces");
}

/// Baer sum: coordinate addition (blockwise addition of cocycles).
inline ExtClass baer_sum(const ExtClass& c, const ExtClass& d) {
  require_same_space(c, d);
  return {c.space(), vector_sum(c.coordinates(), d.coordinates())};
}

inline ExtClass scale(const Rational& s, const ExtClass& c) {
  return {c.space(), vector_scale(s, c.coordinates())};
}

inline ExtClass operator+(const ExtClass& c, const ExtClass& d) { return baer_sum(c, d); }
inline ExtClass operator-(const ExtClass& c) { return scale(Rational(-1), c); }
inline ExtClass operator-(const ExtClass& c, const ExtClass& d) { return baer_sum(c, -d); }
inline ExtClass operator*(const Rational& s, const ExtClass& c) { return scale(s, c); }

/// Reuses `hint` when it already is Ext(quot, sub); builds the space otherwise.
inline std::shared_ptr<const ExtSpace> space_for(const Representation& quot,
                                                 const Representation& sub,
                                                 std::shared_ptr<const ExtSpace> hint) {
  if (hint && hint->quot() == quot && hint->sub() == sub) return hint;
  return ext_space(quot, sub);
}

/// h_* for h : P -> P'. Blocks h ∘ c_g.
inline ExtClass pushforward(const Morphism& h, const ExtClass& c,
                            std::shared_ptr<const ExtSpace> target = nullptr) {
  if (!(h.source() == c.space()->sub())) throw MismatchError("pushforward: source is not the sub");
  auto space = space_for(c.space()->quot(), h.target(), std::move(target));
  std::vector<Matrix> blocks;
  for (const auto& b : c.representative().blocks) blocks.push_back(h.matrix() * b);
  return space->class_of(blocks);
}

/// h^* for h : Q' -> Q. Blocks c_g ∘ h.
inline ExtClass pullback(const Morphism& h, const ExtClass& c,
                         std::shared_ptr<const ExtSpace> target = nullptr) {
  if (!(h.target() == c.space()->quot())) throw MismatchError("pullback: target is not the quot");
  auto space = space_for(h.source(), c.space()->sub(), std::move(target));
  std::vector<Matrix> blocks;
  for (const auto& b : c.representative().blocks) blocks.push_back(b * h.matrix());
  return space->class_of(blocks);
}

/// Blocks of the dual extension 0 -> Q^ -> E^ -> P^ -> 0:
/// -ᵗrho_Q(g)^{-1} ᵗc_g ᵗrho_P(g)^{-1}.
inline std::vector<Matrix> dual_blocks(const Cocycle& c) {
  std::vector<Matrix> out;
  for (std::size_t g = 0; g < c.blocks.size(); ++g) {
    out.push_back(-(c.quot.inverse_image(g).transpose() * c.blocks[g].transpose() *
                    c.sub.inverse_image(g).transpose()));
  }
  return out;
}

inline Cocycle dual_cocycle(const Cocycle& c) {
  return {dual(c.quot), dual(c.sub), dual_blocks(c)};
}

/// Class of the dual extension in Ext(P^, Q^).
inline ExtClass dual_class(const ExtClass& c, std::shared_ptr<const ExtSpace> target = nullptr) {
  const auto d = dual_cocycle(c.representative());
  auto space = space_for(d.quot, d.sub, std::move(target));
  return space->class_of(d.blocks);
}

/// Matrix of a linear map between Ext spaces, column i = image of basis class i.
template <typename Fn>
Matrix coordinate_matrix(const ExtSpace& from, std::size_t target_dim, Fn&& fn) {
  Matrix m(target_dim, from.dim());
  for (std::size_t i = 0; i < from.dim(); ++i) {
    const ExtClass image = fn(from.basis_class(i));
    for (std::size_t r = 0; r < target_dim; ++r) m(r, i) = image.coordinates()[r];
  }
  return m;
}

/// The coevaluation 1 -> B^ ⊗ B (the identity of End(B)).
inline Morphism coevaluation(const Representation& b) {
  const auto one = Representation::trivial(b.presentation());
  Matrix v(b.dim() * b.dim(), 1);
  for (std::size_t i = 0; i < b.dim(); ++i) v(i * b.dim() + i, 0) = 1;
  return {one, tensor(dual(b), b), v};
}

/// F(C): pull back 0 -> B^⊗A -> B^⊗C -> B^⊗B -> 0 along the coevaluation.
/// Lands in Ext(1, B^ ⊗ A).
inline ExtClass f_transport(const ExtClass& c, std::shared_ptr<const ExtSpace> target = nullptr) {
  const auto& b = c.space()->quot();
  const auto& a = c.space()->sub();
  const auto bd = dual(b);
  const auto total = c.representative().total();
  const std::size_t n = b.dim(), da = a.dim(), db = b.dim(), dc = da + db;
  // Reorders the Kronecker basis (i, k) of B^ ⊗ C into (B^ ⊗ A, B^ ⊗ B).
  Matrix perm(n * dc, n * dc);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < dc; ++k) {
      const std::size_t to = k < da ? i * da + k : n * da + i * db + (k - da);
      perm(to, i * dc + k) = 1;
    }
  const auto coev = coevaluation(b);
  std::vector<Matrix> blocks;
  for (std::size_t g = 0; g < a.presentation().generator_count(); ++g) {
    const Matrix m = perm * kron(bd.image(g), total.image(g)) * perm.transpose();
    blocks.push_back(m.block(0, n * da, n * da, n * db) * coev.matrix());
  }
  auto space = space_for(coev.source(), tensor(bd, a), std::move(target));
  return space->class_of(blocks);
}

/// Inverse of F, computed on coordinates: the unique class of `space` (an
/// Ext(B, A)) whose transport is `w`.
inline ExtClass f_transport_inv(const ExtClass& w, const std::shared_ptr<const ExtSpace>& space) {
  const auto fmat =
      coordinate_matrix(*space, w.space()->dim(), [&](const ExtClass& c) { return f_transport(c, w.space()); });
  const auto sol = solve_affine(fmat, w.coordinates());
  if (!sol || !sol->kernel.empty()) throw InconsistentStateError("F is not invertible here");
  return {space, sol->particular};
}

/// t_* for the swap X ⊗ Y -> Y ⊗ X on a class of Ext(1, X ⊗ Y).
inline ExtClass t_involution(const ExtClass& c, const Representation& x, const Representation& y,
                             std::shared_ptr<const ExtSpace> target = nullptr) {
  return pushforward(swap_factors(x, y), c, std::move(target));
}

struct EpsSplit {
  std::vector<ExtClass> plus;
  std::vector<ExtClass> minus;
};

/// Matrix of c ↦ dual_class(c) on an Ext(B, B^) space.
inline Matrix dual_involution_matrix(const std::shared_ptr<const ExtSpace>& space) {
  if (!(space->sub() == dual(space->quot()))) {
    throw MismatchError("eps_split needs a space of the form Ext(B, B^)");
  }
  return coordinate_matrix(*space, space->dim(),
                           [&](const ExtClass& c) { return dual_class(c, space); });
}

/// Ext_± = {c : dual_class(c) = ±c}.
inline EpsSplit eps_split(const std::shared_ptr<const ExtSpace>& space) {
  const Matrix d = dual_involution_matrix(space);
  const Matrix id = Matrix::identity(space->dim());
  EpsSplit out;
  for (const auto& v : kernel_basis(d - id)) out.plus.emplace_back(space, v);
  for (const auto& v : kernel_basis(d + id)) out.minus.emplace_back(space, v);
  return out;
}

inline const std::vector<ExtClass>& eps_part(const EpsSplit& s, int epsilon) {
  return epsilon > 0 ? s.plus : s.minus;
}

/// Coordinates span of a list of classes.
inline Span class_span(std::size_t dim, const std::vector<ExtClass>& classes) {
  std::vector<Vector> vs;
  for (const auto& c : classes) vs.push_back(c.coordinates());
  return Span(dim, vs);
}

}  // namespace panache
