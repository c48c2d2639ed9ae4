#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "panache/errors.hpp"
#include "panache/ext.hpp"
#include "panache/linalg.hpp"
#include "panache/rep.hpp"

namespace panache {

/// 0 -> sub -> total -> quot -> 0 in normalized block form: the inclusion is
/// [I; 0] and the projection [0 I].
class ExtensionWitness {
 public:
  ExtensionWitness(Representation total, Morphism sub_inclusion, Morphism quot_projection)
      : total_(std::move(total)),
        sub_inclusion_(std::move(sub_inclusion)),
        quot_projection_(std::move(quot_projection)) {
    const std::size_t s = sub_inclusion_.source().dim(), q = quot_projection_.target().dim();
    if (!(sub_inclusion_.target() == total_) || !(quot_projection_.source() == total_)) {
      throw MismatchError("witness maps do not meet the total object");
    }
    if (s + q != total_.dim()) throw DimensionError("witness dimensions do not add up");
    if (sub_inclusion_.matrix() != Matrix::identity(s + q).block(0, 0, s + q, s) ||
        quot_projection_.matrix() != Matrix::identity(s + q).block(s, 0, q, s + q)) {
      throw InconsistentStateError("witness is not in normalized block form");
    }
  }

  static ExtensionWitness of(const Cocycle& c) {
    if (!c.satisfies_relators()) throw InconsistentStateError("blocks do not satisfy the relators");
    return {c.total(), c.inclusion(), c.projection()};
  }

  const Representation& total() const { return total_; }
  const Morphism& sub_inclusion() const { return sub_inclusion_; }
  const Morphism& quot_projection() const { return quot_projection_; }
  const Representation& sub() const { return sub_inclusion_.source(); }
  const Representation& quot() const { return quot_projection_.target(); }

  Cocycle cocycle() const {
    std::vector<Matrix> blocks;
    for (const auto& m : total_.images()) blocks.push_back(m.block(0, sub().dim(), sub().dim(), quot().dim()));
    return {sub(), quot(), blocks};
  }

 private:
  Representation total_;
  Morphism sub_inclusion_;
  Morphism quot_projection_;
};

/// M with gradeds A ⊂ N ⊂ B: generator g acts by
/// [[rho_A, x_g, z_g], [0, rho_N, y_g], [0, 0, rho_B]].
struct BlendedExtension {
  Representation a, n, b;
  std::vector<Matrix> x, y, z;

  std::size_t dim() const { return a.dim() + n.dim() + b.dim(); }

  Matrix image(std::size_t g) const {
    return Matrix::from_blocks(
        {{a.image(g), x[g], z[g]},
         {Matrix::zero(n.dim(), a.dim()), n.image(g), y[g]},
         {Matrix::zero(b.dim(), a.dim()), Matrix::zero(b.dim(), n.dim()), b.image(g)}});
  }

  Representation total() const {
    std::vector<Matrix> images;
    for (std::size_t g = 0; g < x.size(); ++g) images.push_back(image(g));
    return {a.presentation(), dim(), std::move(images)};
  }

  Cocycle m1() const { return {a, n, x}; }
  Cocycle m2() const { return {n, b, y}; }

  /// M as an extension of B by M1: blocks [z; y].
  Cocycle over_b() const {
    std::vector<Matrix> blocks;
    for (std::size_t g = 0; g < z.size(); ++g) blocks.push_back(Matrix::from_blocks({{z[g]}, {y[g]}}));
    return {m1().total(), b, blocks};
  }

  /// M as an extension of M2 by A: blocks [x z].
  Cocycle under_a() const {
    std::vector<Matrix> blocks;
    for (std::size_t g = 0; g < z.size(); ++g) blocks.push_back(Matrix::from_blocks({{x[g], z[g]}}));
    return {a, m2().total(), blocks};
  }

  bool satisfies_relators() const { return total().validate().valid; }

  /// ι̃ : M1 -> M.
  Matrix iota_tilde() const { return Matrix::identity(dim()).block(0, 0, dim(), a.dim() + n.dim()); }
  /// π̃ : M -> M2.
  Matrix pi_tilde() const {
    return Matrix::identity(dim()).block(a.dim(), 0, n.dim() + b.dim(), dim());
  }
  /// j̃ = ι̃ ∘ j : A -> M.
  Matrix j_tilde() const { return Matrix::identity(dim()).block(0, 0, dim(), a.dim()); }
  /// ϖ̃ = ϖ ∘ π̃ : M -> B.
  Matrix varpi_tilde() const {
    return Matrix::identity(dim()).block(a.dim() + n.dim(), 0, b.dim(), dim());
  }

  void check() const {
    require_same_group(a, n);
    require_same_group(a, b);
    const std::size_t gens = a.presentation().generator_count();
    if (x.size() != gens || y.size() != gens || z.size() != gens) {
      throw DimensionError("blend needs one block per generator");
    }
    for (std::size_t g = 0; g < gens; ++g) {
      if (x[g].rows() != a.dim() || x[g].cols() != n.dim() || y[g].rows() != n.dim() ||
          y[g].cols() != b.dim() || z[g].rows() != a.dim() || z[g].cols() != b.dim()) {
        throw DimensionError("blend block shapes do not match the gradeds");
      }
    }
    if (!m1().satisfies_relators() || !m2().satisfies_relators() || !satisfies_relators()) {
      throw InconsistentStateError("blend images do not satisfy the relators");
    }
  }

  friend bool operator==(const BlendedExtension&, const BlendedExtension&) = default;
};

/// The block images of a blend whose faces are x, y.
inline BlendedExtension make_blend(const Cocycle& m1, const Cocycle& m2, std::vector<Matrix> z) {
  if (!(m1.quot == m2.sub)) throw MismatchError("M1 and M2 do not share the middle graded");
  BlendedExtension m{m1.sub, m1.quot, m2.quot, m1.blocks, m2.blocks, std::move(z)};
  m.check();
  return m;
}

struct RigidityReport {
  std::size_t hom_n_a = 0;
  std::size_t hom_b_n = 0;
  bool rigid() const { return hom_n_a == 0 && hom_b_n == 0; }
};

inline RigidityReport rigidity(const Representation& a, const Representation& n,
                               const Representation& b) {
  return {hom_dim(n, a), hom_dim(b, n)};
}

/// Relator corners of the full blend as an affine function of the z entries.
inline std::optional<BlendedExtension> solve_blend(const Cocycle& m1, const Cocycle& m2) {
  if (!(m1.quot == m2.sub)) throw MismatchError("M1 and M2 do not share the middle graded");
  require_same_group(m1.sub, m2.quot);
  if (!m1.satisfies_relators() || !m2.satisfies_relators()) {
    throw InconsistentStateError("face extensions do not satisfy the relators");
  }
  const auto& a = m1.sub;
  const auto& b = m2.quot;
  const auto m2_total = m2.total();
  const std::size_t gens = a.presentation().generator_count();
  auto residual = [&](const Vector& t) {
    const auto z = unflatten(t, gens, a.dim(), b.dim());
    std::vector<Matrix> blocks;
    for (std::size_t g = 0; g < gens; ++g) blocks.push_back(Matrix::from_blocks({{m1.blocks[g], z[g]}}));
    return relator_corners(a, m2_total, blocks);
  };
  const auto sol = solve_affine_residual(gens * a.dim() * b.dim(), residual);
  if (!sol) return std::nullopt;
  return make_blend(m1, m2, unflatten(sol->particular, gens, a.dim(), b.dim()));
}

inline std::optional<BlendedExtension> solve_blend(const ExtensionWitness& m1,
                                                   const ExtensionWitness& m2) {
  return solve_blend(m1.cocycle(), m2.cocycle());
}

inline void require_over(const BlendedExtension& m, const ExtClass& u) {
  if (!(u.space()->quot() == m.b) || !(u.space()->sub() == m.a)) {
    throw MismatchError("class is not in Ext(B, A) of this blend");
  }
}

/// z_g ↦ z_g + u_g for the canonical representative of U.
inline BlendedExtension torsor_act(const BlendedExtension& m, const ExtClass& u) {
  require_over(m, u);
  const auto rep = u.representative().blocks;
  BlendedExtension out = m;
  for (std::size_t g = 0; g < out.z.size(); ++g) out.z[g] = out.z[g] + rep[g];
  out.check();
  return out;
}

/// An isomorphism of blends inducing the identity on M1 and M2.
struct BlendedIso {
  BlendedExtension source;
  BlendedExtension target;
  Matrix matrix;
};

inline bool same_faces(const BlendedExtension& m, const BlendedExtension& p) {
  return m.a == p.a && m.n == p.n && m.b == p.b && m.x == p.x && m.y == p.y;
}

/// Whether T is an intertwiner source -> target with identity on the M1 and M2 faces.
inline bool is_blended_iso(const BlendedExtension& src, const BlendedExtension& tgt, const Matrix& t) {
  if (!same_faces(src, tgt) || t.rows() != src.dim() || t.cols() != src.dim()) return false;
  for (std::size_t g = 0; g < src.x.size(); ++g) {
    if (t * src.image(g) != tgt.image(g) * t) return false;
  }
  return t * src.iota_tilde() == src.iota_tilde() && src.pi_tilde() * t == src.pi_tilde();
}

/// Solves f rho_B - rho_A f = z' - z; then T = id + j̃ f ϖ̃.
inline std::optional<BlendedIso> is_isomorphic(const BlendedExtension& m, const BlendedExtension& p) {
  if (!same_faces(m, p)) throw MismatchError("blends over different M1 or M2");
  const std::size_t ra = m.a.dim(), rb = m.b.dim();
  auto residual = [&](const Vector& t) {
    const Matrix f(ra, rb, t);
    std::vector<Matrix> eqs;
    for (std::size_t g = 0; g < m.z.size(); ++g) {
      eqs.push_back(f * m.b.image(g) - m.a.image(g) * f - (p.z[g] - m.z[g]));
    }
    return flatten(eqs);
  };
  const auto sol = solve_affine_residual(ra * rb, residual);
  if (!sol) return std::nullopt;
  const Matrix f(ra, rb, sol->particular);
  const Matrix t = Matrix::identity(m.dim()) + m.j_tilde() * f * m.varpi_tilde();
  if (!is_blended_iso(m, p, t)) throw InconsistentStateError("solved intertwiner fails to intertwine");
  return BlendedIso{m, p, t};
}

/// The class U with torsor_act(M, U) ≅ M'. Needs Hom(N, A) = Hom(B, N) = 0.
inline ExtClass torsor_difference(const BlendedExtension& m, const BlendedExtension& p,
                                  std::shared_ptr<const ExtSpace> space = nullptr) {
  if (!same_faces(m, p)) throw MismatchError("blends over different M1 or M2");
  const auto r = rigidity(m.a, m.n, m.b);
  if (!r.rigid()) {
    throw RigidityError("difference class is not unique: dim Hom(N, A) = " +
                        std::to_string(r.hom_n_a) + ", dim Hom(B, N) = " + std::to_string(r.hom_b_n));
  }
  std::vector<Matrix> diff;
  for (std::size_t g = 0; g < m.z.size(); ++g) diff.push_back(p.z[g] - m.z[g]);
  return space_for(m.b, m.a, std::move(space))->class_of(diff);
}

/// Basis of {X : (id + X) is a blend automorphism}, each returned as the
/// f : B -> A with X = j̃ f ϖ̃.
inline std::vector<Matrix> blend_automorphisms(const BlendedExtension& m) {
  const std::size_t d = m.dim();
  const auto it = m.iota_tilde(), pt = m.pi_tilde();
  auto residual = [&](const Vector& t) {
    const Matrix x(d, d, t);
    std::vector<Matrix> eqs;
    for (std::size_t g = 0; g < m.z.size(); ++g) eqs.push_back(x * m.image(g) - m.image(g) * x);
    eqs.push_back(x * it);
    eqs.push_back(pt * x);
    return flatten(eqs);
  };
  auto [l, c] = linearize(d * d, residual);
  std::vector<Matrix> out;
  const std::size_t ra = m.a.dim(), rb = m.b.dim();
  for (const auto& v : kernel_basis(l)) {
    const Matrix x(d, d, v);
    const Matrix f = x.block(0, d - rb, ra, rb);
    if (x != m.j_tilde() * f * m.varpi_tilde()) {
      throw InconsistentStateError("automorphism is not of the form id + j f varpi");
    }
    out.push_back(f);
  }
  return out;
}

/// A subquotient S/K of a representation V, given by spanning columns.
struct Subquotient {
  std::vector<Matrix> images;
  Matrix sub;
  Matrix kernel;
};

/// A subquotient brought back to block form. `basis` holds the chosen coset
/// representatives (columns in V): images of A, of N, then the canonical
/// particular lifts of B.
struct NormalizedBlend {
  BlendedExtension blend;
  Matrix basis;
  Matrix kernel;

  /// Coordinates of v ∈ S in the block basis (the K component is dropped).
  Vector coordinates(const Vector& v) const {
    const Matrix all = Matrix::from_blocks({{basis, kernel}});
    const auto sol = solve_affine(all, v);
    if (!sol) throw InconsistentStateError("vector outside the subquotient");
    return Vector(sol->particular.begin(), sol->particular.begin() + static_cast<long>(basis.cols()));
  }

  Matrix coordinate_map(const Matrix& cols) const {
    std::vector<Vector> out;
    for (std::size_t j = 0; j < cols.cols(); ++j) out.push_back(coordinates(cols.col(j)));
    return Matrix::from_columns(basis.cols(), out);
  }
};

inline Matrix independent_span(const Matrix& m) {
  std::vector<Vector> cols;
  for (auto c : independent_columns(m)) cols.push_back(m.col(c));
  return Matrix::from_columns(m.rows(), cols);
}

/// `a_map` : A -> V, `m1_map` : M1 -> V land in S; `to_m2` : V -> M2 kills K.
/// The result must reproduce the faces x and y of `faces`.
inline NormalizedBlend normalize(const Subquotient& sq, const BlendedExtension& faces,
                                 const Matrix& a_map, const Matrix& m1_map, const Matrix& to_m2) {
  const std::size_t ra = faces.a.dim(), rn = faces.n.dim(), rb = faces.b.dim();
  const Matrix kernel = independent_span(sq.kernel);
  const Matrix s = independent_span(sq.sub);
  std::vector<Vector> basis;
  for (std::size_t j = 0; j < ra; ++j) basis.push_back(a_map.col(j));
  for (std::size_t j = 0; j < rn; ++j) basis.push_back(m1_map.col(ra + j));
  const Matrix proj = to_m2 * s;
  for (std::size_t k = 0; k < rb; ++k) {
    Vector target(rn + rb, Rational(0));
    target[rn + k] = 1;
    const auto sol = solve_affine(proj, target);
    if (!sol) throw InconsistentStateError("subquotient does not surject onto M2");
    basis.push_back(s * sol->particular);
  }
  const Matrix e = Matrix::from_columns(sq.sub.rows(), basis);
  if (rank(Matrix::from_blocks({{e, kernel}})) != e.cols() + kernel.cols() ||
      e.cols() + kernel.cols() != s.cols()) {
    throw InconsistentStateError("subquotient has the wrong dimension");
  }
  NormalizedBlend out{faces, e, kernel};
  std::vector<Matrix> images;
  for (const auto& img : sq.images) images.push_back(out.coordinate_map(img * e));
  for (std::size_t g = 0; g < images.size(); ++g) {
    const Matrix& r = images[g];
    if (r.block(0, 0, ra, ra) != faces.a.image(g) || r.block(ra, ra, rn, rn) != faces.n.image(g) ||
        r.block(ra + rn, ra + rn, rb, rb) != faces.b.image(g) || r.block(0, ra, ra, rn) != faces.x[g] ||
        r.block(ra, ra + rn, rn, rb) != faces.y[g] || !r.block(ra, 0, rn + rb, ra).is_zero() ||
        !r.block(ra + rn, ra, rb, rn).is_zero()) {
      throw InconsistentStateError("normalized subquotient does not have the expected faces");
    }
    out.blend.z[g] = r.block(0, ra + rn, ra, rb);
  }
  out.blend.check();
  return out;
}

namespace detail {

inline std::vector<Matrix> diagonal_images(const std::vector<Representation>& parts) {
  std::vector<Matrix> out;
  for (std::size_t g = 0; g < parts[0].presentation().generator_count(); ++g) {
    std::vector<Matrix> blocks;
    for (const auto& p : parts) blocks.push_back(p.image(g));
    out.push_back(Matrix::diagonal_sum(blocks));
  }
  return out;
}

inline Matrix columns_of_kernel(const Matrix& m) {
  return Matrix::from_columns(m.cols(), kernel_basis(m));
}

}  // namespace detail

/// M + j_*U: inside V = M ⊕ U ⊕ M1, S = {ϖ̃(m) = p(u)} and
/// K = {(-ι̃ m1, -i a, j a + m1)}.
inline NormalizedBlend build_MU(const BlendedExtension& m, const ExtClass& u) {
  require_over(m, u);
  const Cocycle uc = u.representative();
  const auto m1 = m.m1();
  const std::size_t ra = m.a.dim(), rn = m.n.dim(), rb = m.b.dim();
  const std::size_t dm = m.dim(), du = ra + rb, d1 = ra + rn;
  Subquotient sq;
  sq.images = detail::diagonal_images({m.total(), uc.total(), m1.total()});
  const Matrix p = Matrix::identity(du).block(ra, 0, rb, du);
  sq.sub = detail::columns_of_kernel(Matrix::from_blocks({{m.varpi_tilde(), -p, Matrix::zero(rb, d1)}}));
  const Matrix i_a = Matrix::identity(du).block(0, 0, du, ra);
  const Matrix j_a = Matrix::identity(d1).block(0, 0, d1, ra);
  sq.kernel = Matrix::from_blocks({{-m.iota_tilde(), Matrix::zero(dm, ra)},
                                   {Matrix::zero(du, d1), -i_a},
                                   {Matrix::identity(d1), j_a}});
  const Matrix a_map = Matrix::from_blocks({{m.j_tilde()}, {Matrix::zero(du + d1, ra)}});
  const Matrix m1_map = Matrix::from_blocks({{m.iota_tilde()}, {Matrix::zero(du + d1, d1)}});
  // (m, u, m1) ↦ π̃(m) + ι π(m1).
  const Matrix iota_pi = Matrix::identity(rn + rb).block(0, 0, rn + rb, rn) *
                         Matrix::identity(d1).block(ra, 0, rn, d1);
  const Matrix to_m2 = Matrix::from_blocks({{m.pi_tilde(), Matrix::zero(rn + rb, du), iota_pi}});
  return normalize(sq, m, a_map, m1_map, to_m2);
}

/// M + ϖ^*U: inside V' = M ⊕ U ⊕ M2, S' = {π̃(m) = m2, p(u) = ϖ(m2)} and
/// K' = {(-j̃ a, i a, 0)}.
inline NormalizedBlend build_MU_prime(const BlendedExtension& m, const ExtClass& u) {
  require_over(m, u);
  const Cocycle uc = u.representative();
  const auto m2 = m.m2();
  const std::size_t ra = m.a.dim(), rn = m.n.dim(), rb = m.b.dim();
  const std::size_t dm = m.dim(), du = ra + rb, d2 = rn + rb;
  Subquotient sq;
  sq.images = detail::diagonal_images({m.total(), uc.total(), m2.total()});
  const Matrix p = Matrix::identity(du).block(ra, 0, rb, du);
  const Matrix varpi = Matrix::identity(d2).block(rn, 0, rb, d2);
  sq.sub = detail::columns_of_kernel(
      Matrix::from_blocks({{m.pi_tilde(), Matrix::zero(d2, du), -Matrix::identity(d2)},
                           {Matrix::zero(rb, dm), p, -varpi}}));
  const Matrix i_a = Matrix::identity(du).block(0, 0, du, ra);
  sq.kernel = Matrix::from_blocks({{-m.j_tilde()}, {i_a}, {Matrix::zero(d2, ra)}});
  const Matrix a_map = Matrix::from_blocks({{m.j_tilde()}, {Matrix::zero(du + d2, ra)}});
  const Matrix m1_map =
      Matrix::from_blocks({{m.iota_tilde()}, {Matrix::zero(du, ra + rn)}, {m.pi_tilde() * m.iota_tilde()}});
  const Matrix to_m2 = Matrix::from_blocks({{Matrix::zero(d2, dm + du), Matrix::identity(d2)}});
  return normalize(sq, m, a_map, m1_map, to_m2);
}

/// F : M_U -> M^U induced by (m, u, m1) ↦ (m + ι̃ m1, u, π̃(m + ι̃ m1)).
inline BlendedIso canonical_iso(const BlendedExtension& m, const ExtClass& u) {
  const auto src = build_MU(m, u);
  const auto tgt = build_MU_prime(m, u);
  const std::size_t dm = m.dim(), du = m.a.dim() + m.b.dim(), d1 = m.a.dim() + m.n.dim();
  const std::size_t d2 = m.n.dim() + m.b.dim();
  const Matrix f = Matrix::from_blocks(
      {{Matrix::identity(dm), Matrix::zero(dm, du), m.iota_tilde()},
       {Matrix::zero(du, dm), Matrix::identity(du), Matrix::zero(du, d1)},
       {m.pi_tilde(), Matrix::zero(d2, du), m.pi_tilde() * m.iota_tilde()}});
  // K maps into K': its image has zero block coordinates.
  if (!tgt.coordinate_map(f * src.kernel).is_zero()) {
    throw InconsistentStateError("F does not carry K into K'");
  }
  const Matrix t = tgt.coordinate_map(f * src.basis);
  if (!is_blended_iso(src.blend, tgt.blend, t)) {
    throw InconsistentStateError("F is not an isomorphism of blends");
  }
  return {src.blend, tgt.blend, t};
}

/// The induced map on M2 of the isomorphism M -> M + j_*(f^*M1) attached to
/// the canonical section of f^*M1; checked against id - ι f ϖ.
inline Matrix induced_m2_automorphism(const BlendedExtension& m, const Morphism& f) {
  if (!(f.source() == m.b) || !(f.target() == m.n)) throw MismatchError("f must be a map B -> N");
  const std::size_t ra = m.a.dim(), rn = m.n.dim(), rb = m.b.dim();
  const std::size_t dm = m.dim(), d1 = ra + rn, dv = dm + d1;
  const Matrix& fm = f.matrix();
  // V = M ⊕ M1, S = {π(m1) = f ϖ̃(m)}, K = {(j̃ a, -j a)}.
  Subquotient sq;
  sq.images = detail::diagonal_images({m.total(), m.m1().total()});
  const Matrix pi = Matrix::identity(d1).block(ra, 0, rn, d1);
  sq.sub = detail::columns_of_kernel(Matrix::from_blocks({{-(fm * m.varpi_tilde()), pi}}));
  const Matrix j_a = Matrix::identity(d1).block(0, 0, d1, ra);
  sq.kernel = Matrix::from_blocks({{m.j_tilde()}, {-j_a}});
  const Span s(dv, [&] {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < sq.sub.cols(); ++j) cols.push_back(sq.sub.col(j));
    return cols;
  }());
  const Span k(dv, [&] {
    std::vector<Vector> cols;
    for (std::size_t j = 0; j < sq.kernel.cols(); ++j) cols.push_back(sq.kernel.col(j));
    return cols;
  }());
  // μ1(m) = (0, f ϖ̃ m) ∈ M1 and F(m) = (m - ι̃ μ1(m), μ1(m)).
  const Matrix mu = Matrix::from_blocks({{Matrix::zero(ra, dm)}, {fm * m.varpi_tilde()}});
  const Matrix big_f = Matrix::from_blocks({{Matrix::identity(dm) - m.iota_tilde() * mu}, {mu}});
  for (std::size_t j = 0; j < dm; ++j) {
    if (!s.contains(big_f.col(j))) throw InconsistentStateError("F leaves the subquotient");
  }
  const auto total = m.total();
  for (std::size_t g = 0; g < m.z.size(); ++g) {
    const Matrix defect = sq.images[g] * big_f - big_f * total.image(g);
    for (std::size_t j = 0; j < dm; ++j) {
      if (!k.contains(defect.col(j))) throw InconsistentStateError("F is not equivariant mod K");
    }
  }
  // Quotient to M2: (m, m1) ↦ π̃ m; lift M2 -> M by the last coordinates.
  const Matrix q = Matrix::from_blocks({{m.pi_tilde(), Matrix::zero(rn + rb, d1)}});
  if (!(q * big_f * m.j_tilde()).is_zero()) throw InconsistentStateError("induced map is ill defined");
  const Matrix induced = q * big_f * m.pi_tilde().transpose();
  const Matrix expected = Matrix::identity(rn + rb) -
                          Matrix::identity(rn + rb).block(0, 0, rn + rb, rn) * fm *
                              Matrix::identity(rn + rb).block(rn, 0, rb, rn + rb);
  if (induced != expected) throw InconsistentStateError("induced map differs from id - iota f varpi");
  return induced;
}

/// f^*M1 for f : B -> N, as a class of Ext(B, A): blocks x_g f.
inline ExtClass pullback_face(const BlendedExtension& m, const Morphism& f,
                              std::shared_ptr<const ExtSpace> space = nullptr) {
  if (!(f.source() == m.b) || !(f.target() == m.n)) throw MismatchError("f must be a map B -> N");
  std::vector<Matrix> blocks;
  for (const auto& xg : m.x) blocks.push_back(xg * f.matrix());
  return space_for(m.b, m.a, std::move(space))->class_of(blocks);
}

/// A lift B -> M1 of f : B -> N along π, when one exists.
inline std::optional<Morphism> lift_to_m1(const BlendedExtension& m, const Morphism& f) {
  const auto m1 = m.m1().total();
  const std::size_t ra = m.a.dim(), rb = m.b.dim();
  auto residual = [&](const Vector& t) {
    const Matrix top(ra, rb, t);
    const Matrix l = Matrix::from_blocks({{top}, {f.matrix()}});
    std::vector<Matrix> eqs;
    for (std::size_t g = 0; g < m.z.size(); ++g) eqs.push_back(l * m.b.image(g) - m1.image(g) * l);
    return flatten(eqs);
  };
  const auto sol = solve_affine_residual(ra * rb, residual);
  if (!sol) return std::nullopt;
  return Morphism(m.b, m1, Matrix::from_blocks({{Matrix(ra, rb, sol->particular)}, {f.matrix()}}));
}

}  // namespace panache
