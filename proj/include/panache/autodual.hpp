#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "panache/blend.hpp"
#include "panache/errors.hpp"
#include "panache/ext.hpp"
#include "panache/linalg.hpp"
#include "panache/rep.hpp"

namespace panache {

inline void require_sign(int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw DimensionError("epsilon must be +1 or -1");
}

/// φ : N -> N^ with ᵗφ = εφ, λ : A -> B^, and the lift Φ : M1 -> M2^ of
/// both. M2^ is taken in (B^, N^) order, so Φ = [[Λ, K], [0, φ]].
struct DualityDatum {
  int epsilon = 1;
  Cocycle m1;
  Cocycle m2;
  Morphism phi;
  Morphism lam;
  Morphism big_phi;
  Morphism mu;
  Matrix k;  // the corner of Φ
};

/// Hom(B, B^) split by v ↦ ᵗv.
struct HomEpsSplit {
  std::vector<Matrix> plus;
  std::vector<Matrix> minus;
};

inline HomEpsSplit hom_eps_split(const Representation& b) {
  const auto basis = hom_space(b, dual(b));
  const std::size_t d = b.dim();
  std::vector<Vector> cols;
  for (const auto& f : basis) cols.push_back(f.matrix().vec());
  const Matrix coords = Matrix::from_columns(d * d, cols);
  Matrix t(basis.size(), basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto sol = solve_affine(coords, basis[i].matrix().transpose().vec());
    if (!sol) throw InconsistentStateError("Hom(B, B^) is not closed under transpose");
    for (std::size_t r = 0; r < basis.size(); ++r) t(r, i) = sol->particular[r];
  }
  const Matrix id = Matrix::identity(basis.size());
  HomEpsSplit out;
  auto to_matrix = [&](const Vector& v) { return Matrix(d, d, coords * v); };
  for (const auto& v : kernel_basis(t - id)) out.plus.push_back(to_matrix(v));
  for (const auto& v : kernel_basis(t + id)) out.minus.push_back(to_matrix(v));
  return out;
}

inline const std::vector<Matrix>& hom_eps_part(const HomEpsSplit& s, int epsilon) {
  return epsilon > 0 ? s.plus : s.minus;
}

/// Checks λ_*[M1] = φ^*[M2^] in Ext(N, B^) and solves for the lift Φ.
inline DualityDatum build_datum(const Cocycle& m1, const Cocycle& m2, const Matrix& phi,
                                const Matrix& lam, int epsilon) {
  require_sign(epsilon);
  if (!(m1.quot == m2.sub)) throw MismatchError("M1 and M2 do not share the middle graded");
  const auto& a = m1.sub;
  const auto& n = m1.quot;
  const auto& b = m2.quot;
  const auto nd = dual(n), bd = dual(b);
  if (phi.transpose() != Rational(epsilon) * phi) throw CompatibilityError("phi is not epsilon-symmetric");
  if (!is_invertible(phi) || !is_invertible(lam)) throw CompatibilityError("phi and lambda must be invertible");
  const Morphism phi_m(n, nd, phi);
  const Morphism lam_m(a, bd, lam);
  if (const auto h = hom_dim(n, a); h != 0) {
    throw RigidityError("Hom(N, A) has dimension " + std::to_string(h));
  }
  const auto m2d = dual_cocycle(m2);
  const std::size_t gens = a.presentation().generator_count();
  std::vector<Matrix> lx, yphi;
  for (std::size_t g = 0; g < gens; ++g) {
    lx.push_back(lam * m1.blocks[g]);
    yphi.push_back(m2d.blocks[g] * phi);
  }
  const auto sp = ext_space(n, bd);
  if (!(sp->class_of(lx) == sp->class_of(yphi))) {
    throw CompatibilityError("lambda_* M1 and phi^* M2^ differ in Ext(N, B^)");
  }
  // K rho_N - rho_B^ K = y^ φ - Λ x.
  const std::size_t rb = b.dim(), rn = n.dim();
  auto residual = [&](const Vector& t) {
    const Matrix k(rb, rn, t);
    std::vector<Matrix> eqs;
    for (std::size_t g = 0; g < gens; ++g) {
      eqs.push_back(k * n.image(g) - bd.image(g) * k - (yphi[g] - lx[g]));
    }
    return flatten(eqs);
  };
  const auto sol = solve_affine_residual(rb * rn, residual);
  if (!sol) throw InconsistentStateError("no lift of phi and lambda");
  if (!sol->kernel.empty()) throw RigidityError("lift is not unique: Hom(N, B^) is nonzero");
  const Matrix k(rb, rn, sol->particular);
  const Matrix big = Matrix::from_blocks({{lam, k}, {Matrix::zero(rn, a.dim()), phi}});
  Morphism big_phi(m1.total(), m2d.total(), big);
  Morphism mu(b, dual(a), Rational(epsilon) * lam.transpose());
  return {epsilon, m1, m2, phi_m, lam_m, std::move(big_phi), std::move(mu), k};
}

inline void require_datum_for(const BlendedExtension& m, const DualityDatum& d) {
  if (!(m.m1().blocks == d.m1.blocks) || !(m.m2().blocks == d.m2.blocks) || !(m.a == d.m1.sub) ||
      !(m.n == d.m1.quot) || !(m.b == d.m2.quot)) {
    throw MismatchError("duality datum belongs to other faces");
  }
}

/// M^ with gradeds (B^, N^, A^): inverse transpose with the block order reversed.
inline BlendedExtension dual_blend(const BlendedExtension& m) {
  const std::size_t ra = m.a.dim(), rn = m.n.dim(), rb = m.b.dim(), d = m.dim();
  Matrix perm(d, d);
  for (std::size_t i = 0; i < rb; ++i) perm(i, ra + rn + i) = 1;
  for (std::size_t i = 0; i < rn; ++i) perm(rb + i, ra + i) = 1;
  for (std::size_t i = 0; i < ra; ++i) perm(rb + rn + i, i) = 1;
  BlendedExtension out{dual(m.b), dual(m.n), dual(m.a), {}, {}, {}};
  const auto total = m.total();
  for (std::size_t g = 0; g < m.z.size(); ++g) {
    const Matrix r = perm * total.inverse_image(g).transpose() * perm.transpose();
    out.x.push_back(r.block(0, rb, rb, rn));
    out.y.push_back(r.block(rb, rb + rn, rn, ra));
    out.z.push_back(r.block(0, rb + rn, rb, ra));
  }
  out.check();
  return out;
}

/// ᵗΦ : M2 -> M1^ in (N, B) -> (N^, A^) coordinates.
inline Matrix transpose_lift(const DualityDatum& d) {
  const std::size_t ra = d.m1.sub.dim(), rn = d.m1.quot.dim();
  return Matrix::from_blocks({{d.phi.matrix().transpose(), d.k.transpose()},
                              {Matrix::zero(ra, rn), d.lam.matrix().transpose()}});
}

/// The difference λ_*M - ε (ᵗΦ)^*M^ in Ext(M2, B^), as blocks.
inline std::vector<Matrix> gamma_difference(const BlendedExtension& m, const DualityDatum& d) {
  require_datum_for(m, d);
  const auto md = dual_blend(m);
  const Matrix tphi = transpose_lift(d);
  const Rational eps(d.epsilon);
  std::vector<Matrix> out;
  for (std::size_t g = 0; g < m.z.size(); ++g) {
    const Matrix left = d.lam.matrix() * Matrix::from_blocks({{m.x[g], m.z[g]}});
    const Matrix right = Matrix::from_blocks({{md.x[g], md.z[g]}}) * tphi;
    out.push_back(left - eps * right);
  }
  return out;
}

/// γ_M ∈ Ext(B, B^) with ϖ^*γ_M = λ_*M - ε (ᵗΦ)^*M^.
inline ExtClass gamma_obstruction(const BlendedExtension& m, const DualityDatum& d,
                                  std::shared_ptr<const ExtSpace> space = nullptr) {
  const auto diff = gamma_difference(m, d);
  const auto bd = dual(m.b);
  const auto target = space_for(m.b, bd, std::move(space));
  const auto m2 = m.m2().total();
  const auto ext_m2 = ext_space(m2, bd);
  const Morphism varpi(m2, m.b, Matrix::identity(m2.dim()).block(m.n.dim(), 0, m.b.dim(), m2.dim()));
  const Matrix pull = coordinate_matrix(*target, ext_m2->dim(),
                                        [&](const ExtClass& c) { return pullback(varpi, c, ext_m2); });
  if (rank(pull) != target->dim()) throw RigidityError("varpi^* is not injective on Ext(B, B^)");
  const auto sol = solve_affine(pull, ext_m2->coordinates(diff));
  if (!sol) throw InconsistentStateError("obstruction is not pulled back from Ext(B, B^)");
  return {target, sol->particular};
}

struct AutodualResult {
  BlendedExtension blend;
  ExtClass delta_prime;  // in Ext_{-ε}(B, B^)
  ExtClass delta;        // λ_*^{-1} δ' in Ext(B, A)
};

/// δ' = -½ γ_M, M' = M * λ_*^{-1} δ'.
inline AutodualResult autodualize(const BlendedExtension& m, const DualityDatum& d) {
  const auto gamma = gamma_obstruction(m, d);
  const auto delta_prime = Rational(-1, 2) * gamma;
  const Morphism lam_inv(dual(m.b), m.a, inverse(d.lam.matrix()));
  const auto delta = pushforward(lam_inv, delta_prime, ext_space(m.b, m.a));
  auto blend = torsor_act(m, delta);
  if (!gamma_obstruction(blend, d, gamma.space()).is_zero()) {
    throw InconsistentStateError("autodualized blend still has an obstruction");
  }
  if (!(dual_class(delta_prime, gamma.space()) == Rational(-d.epsilon) * delta_prime)) {
    throw InconsistentStateError("corrector is not in Ext_{-eps}");
  }
  return {std::move(blend), delta_prime, delta};
}

/// A nondegenerate invariant ε-symmetric form on M, as a Gram matrix in the
/// (A, N, B) coordinates of the blend.
struct EpsPairing {
  BlendedExtension blend;
  Matrix matrix;
  int epsilon = 1;
};

struct PairingReport {
  bool invariant = false;
  bool nondegenerate = false;
  bool eps_symmetric = false;
  bool a_isotropic = false;
  bool a_perp_is_m1 = false;

  bool ok() const { return invariant && nondegenerate && eps_symmetric && a_isotropic && a_perp_is_m1; }
};

inline PairingReport check_pairing(const EpsPairing& p) {
  PairingReport r;
  const auto& m = p.blend;
  const Matrix& psi = p.matrix;
  const std::size_t ra = m.a.dim(), d = m.dim();
  r.invariant = true;
  for (std::size_t g = 0; g < m.z.size(); ++g) {
    const Matrix rho = m.image(g);
    if (rho.transpose() * psi * rho != psi) r.invariant = false;
  }
  r.nondegenerate = is_invertible(psi);
  r.eps_symmetric = psi.transpose() == Rational(p.epsilon) * psi;
  r.a_isotropic = psi.block(0, 0, ra, ra).is_zero();
  // A^⊥ = kernel of the A rows; compare with the span of the M1 coordinates.
  const auto perp = kernel_basis(psi.block(0, 0, ra, d));
  std::vector<Vector> m1;
  for (std::size_t j = 0; j < ra + m.n.dim(); ++j) m1.push_back(Matrix::identity(d).col(j));
  r.a_perp_is_m1 = Span(d, perp) == Span(d, m1);
  return r;
}

namespace detail {

/// Ψ = [[0, 0, εᵗΛ], [0, φ, P], [Λ, K, Q]].
inline Matrix pairing_with(const BlendedExtension& m, const DualityDatum& d, const Matrix& p,
                           const Matrix& q) {
  const std::size_t ra = m.a.dim(), rn = m.n.dim();
  return Matrix::from_blocks(
      {{Matrix::zero(ra, ra), Matrix::zero(ra, rn), Rational(d.epsilon) * d.lam.matrix().transpose()},
       {Matrix::zero(rn, ra), d.phi.matrix(), p},
       {d.lam.matrix(), d.k, q}});
}

inline Vector invariance_residual(const BlendedExtension& m, const Matrix& psi) {
  std::vector<Matrix> eqs;
  for (std::size_t g = 0; g < m.z.size(); ++g) {
    const Matrix rho = m.image(g);
    eqs.push_back(rho.transpose() * psi * rho - psi);
  }
  return flatten(eqs);
}

}  // namespace detail

/// Any invariant ψ extending Φ with quotient μ = εᵗλ, then symmetrized:
/// ψ' = ψ - ᵗϖ̃ (½ v) ϖ̃ where ψ - εᵗψ = ᵗϖ̃ v ϖ̃.
inline EpsPairing isoaut_find(const BlendedExtension& m, const DualityDatum& d) {
  require_datum_for(m, d);
  const std::size_t ra = m.a.dim(), rn = m.n.dim(), rb = m.b.dim(), dm = m.dim();
  auto unpack = [&](const Vector& t) {
    const Matrix p(rn, rb, Vector(t.begin(), t.begin() + static_cast<long>(rn * rb)));
    const Matrix q(rb, rb, Vector(t.begin() + static_cast<long>(rn * rb), t.end()));
    return detail::pairing_with(m, d, p, q);
  };
  const auto sol = solve_affine_residual(
      rn * rb + rb * rb, [&](const Vector& t) { return detail::invariance_residual(m, unpack(t)); });
  if (!sol) throw InconsistentStateError("Phi has no invariant extension: the obstruction is nonzero");
  const Matrix psi = unpack(sol->particular);
  const Matrix diff = psi - Rational(d.epsilon) * psi.transpose();
  if (!diff.with_block(ra + rn, ra + rn, Matrix::zero(rb, rb)).is_zero()) {
    throw InconsistentStateError("psi - eps psi^t does not factor through varpi");
  }
  const Matrix v = diff.block(ra + rn, ra + rn, rb, rb);
  const Matrix corner = Matrix::zero(dm, dm).with_block(ra + rn, ra + rn, Rational(1, 2) * v);
  EpsPairing out{m, psi - corner, d.epsilon};
  const auto report = check_pairing(out);
  if (!report.ok()) throw InconsistentStateError("symmetrized pairing fails its invariants");
  return out;
}

/// Directions of the set of ε-symmetric invariant extensions of Φ: each is
/// the B-corner w of a difference of two solutions.
inline std::vector<Matrix> isoaut_directions(const BlendedExtension& m, const DualityDatum& d) {
  require_datum_for(m, d);
  const std::size_t ra = m.a.dim(), rn = m.n.dim(), rb = m.b.dim(), dm = m.dim();
  auto embed = [&](const Vector& t) {
    const Matrix p(rn, rb, Vector(t.begin(), t.begin() + static_cast<long>(rn * rb)));
    const Matrix q(rb, rb, Vector(t.begin() + static_cast<long>(rn * rb), t.end()));
    return Matrix::zero(dm, dm).with_block(ra, ra + rn, p).with_block(ra + rn, ra + rn, q);
  };
  auto residual = [&](const Vector& t) {
    const Matrix w = embed(t);
    auto r = detail::invariance_residual(m, w);
    const auto sym = (w.transpose() - Rational(d.epsilon) * w).vec();
    r.insert(r.end(), sym.begin(), sym.end());
    return r;
  };
  auto [l, c] = linearize(rn * rb + rb * rb, residual);
  std::vector<Matrix> out;
  for (const auto& v : kernel_basis(l)) {
    const Matrix w = embed(v);
    if (!w.block(ra, ra + rn, rn, rb).is_zero()) throw InconsistentStateError("direction with N-part");
    out.push_back(w.block(ra + rn, ra + rn, rb, rb));
  }
  return out;
}

}  // namespace panache
