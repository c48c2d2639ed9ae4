#include <gtest/gtest.h>

#include "panache/autodual.hpp"
#include "panache/samples.hpp"
#include "support.hpp"

using namespace panache;
using namespace panache::testing;

namespace {

// Whether some invariant Gram matrix with ᵗψ = εψ has the Φ blocks and
// quotient εᵗλ prescribed; every other entry is free.
bool symmetric_extension_exists(const BlendedExtension& m, const DualityDatum& d) {
  const std::size_t ra = m.a.dim(), rn = m.n.dim(), dm = m.dim();
  auto residual = [&](const Vector& t) {
    const Matrix psi(dm, dm, t);
    Vector r;
    for (std::size_t g = 0; g < 2; ++g) {
      const Matrix rho = m.image(g);
      const auto e = (rho.transpose() * psi * rho - psi).vec();
      r.insert(r.end(), e.begin(), e.end());
    }
    const auto s = (psi.transpose() - Rational(d.epsilon) * psi).vec();
    r.insert(r.end(), s.begin(), s.end());
    // Rows of B^ restricted to M1 are Φ's (Λ, K); rows of N^ on N are φ;
    // A^ rows: zero on M1, εᵗλ on B.
    const auto fix = [&](const Matrix& got, const Matrix& want) {
      const auto e = (got - want).vec();
      r.insert(r.end(), e.begin(), e.end());
    };
    fix(psi.block(ra + rn, 0, m.b.dim(), ra), d.lam.matrix());
    fix(psi.block(ra + rn, ra, m.b.dim(), rn), d.k);
    fix(psi.block(ra, ra, rn, rn), d.phi.matrix());
    fix(psi.block(0, 0, ra, ra + rn), Matrix::zero(ra, ra + rn));
    fix(psi.block(0, ra + rn, ra, m.b.dim()), Rational(d.epsilon) * d.lam.matrix().transpose());
    fix(psi.block(ra, 0, rn, ra), Matrix::zero(rn, ra));
    return r;
  };
  return solve_affine_residual(dm * dm, residual).has_value();
}

// Brute force intertwiners B -> B^ over the integers {-2..2}: ᵗρ f ρ = f.
std::pair<int, int> brute_sym_antisym_count(const Representation& b) {
  int sym = 0, anti = 0;
  const std::size_t d = b.dim();
  const std::size_t n = d * d;
  std::vector<int> digits(n, -2);
  while (true) {
    Matrix f(d, d);
    for (std::size_t k = 0; k < n; ++k) f(k / d, k % d) = digits[k];
    bool ok = !f.is_zero();
    for (std::size_t g = 0; ok && g < b.images().size(); ++g) {
      ok = b.image(g).transpose() * f * b.image(g) == f;
    }
    if (ok && f.transpose() == f) ++sym;
    if (ok && f.transpose() == -f) ++anti;
    std::size_t k = 0;
    while (k < n && digits[k] == 2) digits[k++] = -2;
    if (k == n) break;
    ++digits[k];
  }
  return {sym, anti};
}

Representation rot4() {
  return Representation::checked(free2(), 2, {Matrix{{0, -1}, {1, 0}}, Matrix::identity(2)});
}

}  // namespace

TEST(HomEps, TrivialAndRotation) {
  const auto one = Representation::trivial(free2());
  const auto s1 = hom_eps_split(one);
  EXPECT_EQ(s1.plus.size(), 1u);
  EXPECT_EQ(s1.minus.size(), 0u);
  // Rotation invariant forms: multiples of I (symmetric) and of J (alternating).
  // Integer points in {-2..2}: 4 nonzero multiples of each.
  const auto s = hom_eps_split(rot4());
  EXPECT_EQ(s.plus.size(), 1u);
  EXPECT_EQ(s.minus.size(), 1u);
  EXPECT_EQ(brute_sym_antisym_count(rot4()), std::make_pair(4, 4));
  Sampler rng(3);
  for (int t = 0; t < 5; ++t) {
    const auto b = rng.representation(free2(), 2);
    const auto sp = hom_eps_split(b);
    EXPECT_EQ(sp.plus.size() + sp.minus.size(), hom_dim(b, dual(b)));
  }
}

TEST(Datum, SplitCaseLiftIsDiagonal) {
  Sampler rng(5);
  const auto s = rng.self_dual(-1, 1, 1);
  const auto& d0 = s.datum;
  const auto m1 = Cocycle::split(d0.m1.quot, d0.m1.sub), m2 = Cocycle::split(d0.m2.quot, d0.m2.sub);
  const auto d = build_datum(m1, m2, d0.phi.matrix(), d0.lam.matrix(), -1);
  EXPECT_TRUE(d.k.is_zero());
  EXPECT_EQ(d.big_phi.matrix(), Matrix::diagonal_sum({d.lam.matrix(), d.phi.matrix()}));
}

TEST(Datum, LiftSatisfiesBothSquares) {
  Sampler rng(6);
  for (int eps : {1, -1}) {
    for (int t = 0; t < 4; ++t) {
      const auto s = rng.self_dual(eps, 1 + t % 2, 1);
      const auto& d = s.datum;
      const std::size_t ra = d.m1.sub.dim(), rn = d.m1.quot.dim(), rb = d.m2.quot.dim();
      // Restriction to A is λ into B^ ⊂ M2^, descent to N is φ.
      EXPECT_EQ(d.big_phi.matrix().block(0, 0, rb, ra), d.lam.matrix());
      EXPECT_TRUE(d.big_phi.matrix().block(rb, 0, rn, ra).is_zero());
      EXPECT_EQ(d.big_phi.matrix().block(rb, ra, rn, rn), d.phi.matrix());
      EXPECT_EQ(d.mu.matrix(), Rational(eps) * d.lam.matrix().transpose());
    }
  }
}

TEST(Datum, IncompatibleFacesAreRejected) {
  Sampler rng(7);
  const auto s = rng.self_dual(1, 1, 1);
  const auto& d = s.datum;
  auto bad = d.m2;
  const auto sp = ext_space(bad.quot, bad.sub);
  // Perturb M2 by a class whose pairing with φ is not matched by M1.
  bool rejected = false;
  for (std::size_t i = 0; i < sp->dim() && !rejected; ++i) {
    auto trial = bad;
    const auto extra = sp->basis_class(i).representative().blocks;
    for (std::size_t g = 0; g < 2; ++g) trial.blocks[g] = trial.blocks[g] + extra[g];
    try {
      build_datum(d.m1, trial, d.phi.matrix(), d.lam.matrix(), 1);
    } catch (const CompatibilityError&) {
      rejected = true;
    }
  }
  EXPECT_TRUE(rejected);
  EXPECT_THROW(build_datum(d.m1, d.m2, d.phi.matrix(), d.lam.matrix(), -1), CompatibilityError);
}

TEST(Gamma, VanishesExactlyWhenASymmetricExtensionExists) {
  Sampler rng(8);
  for (int eps : {1, -1}) {
    for (int t = 0; t < 4; ++t) {
      const auto s = rng.self_dual(eps, 1, 1);
      const auto gamma = gamma_obstruction(s.blend, s.datum);
      EXPECT_EQ(gamma.is_zero(), symmetric_extension_exists(s.blend, s.datum));
      const auto r = autodualize(s.blend, s.datum);
      EXPECT_TRUE(symmetric_extension_exists(r.blend, s.datum));
    }
  }
}

TEST(Gamma, DualSymmetryAndTranslationLaw) {
  Sampler rng(9);
  for (int eps : {1, -1}) {
    for (int t = 0; t < 6; ++t) {
      const auto s = rng.self_dual(eps, 1 + t % 2, 1);
      const auto gamma = gamma_obstruction(s.blend, s.datum);
      EXPECT_EQ(dual_class(gamma, gamma.space()), Rational(-eps) * gamma);
      const auto ext_ba = ext_space(s.blend.b, s.blend.a);
      const auto delta = rng.ext_class(ext_ba);
      const auto shifted = gamma_obstruction(torsor_act(s.blend, delta), s.datum, gamma.space());
      const auto dp = pushforward(s.datum.lam, delta, gamma.space());
      EXPECT_EQ(shifted, gamma + dp - Rational(eps) * dual_class(dp, gamma.space()));
    }
  }
}

TEST(Autodualize, CorrectsIdempotentlyAndUniquely) {
  Sampler rng(10);
  for (int eps : {1, -1}) {
    for (int t = 0; t < 4; ++t) {
      const auto s = rng.self_dual(eps, 1 + t % 2, 1);
      const auto r = autodualize(s.blend, s.datum);
      EXPECT_TRUE(gamma_obstruction(r.blend, s.datum).is_zero());
      EXPECT_EQ(dual_class(r.delta_prime, r.delta_prime.space()), Rational(-eps) * r.delta_prime);
      const auto again = autodualize(r.blend, s.datum);
      EXPECT_TRUE(again.delta_prime.is_zero());
      EXPECT_TRUE(is_isomorphic(again.blend, r.blend).has_value());
      // Another autodual blend: shift by λ^{-1} of an Ext_eps class.
      const auto split = eps_split(r.delta_prime.space());
      for (const auto& c : eps_part(split, eps)) {
        const Morphism lam_inv(dual(s.blend.b), s.blend.a, inverse(s.datum.lam.matrix()));
        const auto other = torsor_act(r.blend, pushforward(lam_inv, c, ext_space(s.blend.b, s.blend.a)));
        EXPECT_TRUE(gamma_obstruction(other, s.datum).is_zero());
        const auto diff = pushforward(s.datum.lam, torsor_difference(r.blend, other), c.space());
        EXPECT_EQ(dual_class(diff, c.space()), Rational(eps) * diff);
      }
    }
  }
}

TEST(Isoaut, PairingInvariants) {
  Sampler rng(11);
  for (int eps : {1, -1}) {
    for (int t = 0; t < 4; ++t) {
      const auto s = rng.self_dual(eps, 1 + t % 2, 1);
      const auto r = autodualize(s.blend, s.datum);
      const auto p = isoaut_find(r.blend, s.datum);
      const auto rep = check_pairing(p);
      EXPECT_TRUE(rep.invariant && rep.nondegenerate && rep.eps_symmetric && rep.a_isotropic &&
                  rep.a_perp_is_m1);
      // Solution set: an affine space over Hom_eps(B, B^).
      const auto dirs = isoaut_directions(r.blend, s.datum);
      EXPECT_EQ(dirs.size(), hom_eps_part(hom_eps_split(r.blend.b), eps).size());
      const std::size_t off = r.blend.a.dim() + r.blend.n.dim();
      for (const auto& w : dirs) {
        EXPECT_EQ(w.transpose(), Rational(eps) * w);
        EpsPairing moved = p;
        moved.matrix = p.matrix + Matrix::zero(p.matrix.rows(), p.matrix.cols()).with_block(off, off, w);
        EXPECT_TRUE(check_pairing(moved).ok());
      }
    }
  }
}

TEST(Isoaut, SplitAutodualIsAntidiagonal) {
  Sampler rng(14);
  for (int eps : {1, -1}) {
    const auto s = rng.self_dual(eps, 1, 1);
    const auto& d0 = s.datum;
    const auto m1 = Cocycle::split(d0.m1.quot, d0.m1.sub), m2 = Cocycle::split(d0.m2.quot, d0.m2.sub);
    const auto d = build_datum(m1, m2, d0.phi.matrix(), d0.lam.matrix(), eps);
    const auto m = *solve_blend(m1, m2);
    EXPECT_TRUE(gamma_obstruction(m, d).is_zero());
    const auto p = isoaut_find(m, d);
    const std::size_t ra = m.a.dim(), rn = m.n.dim();
    const Matrix expected = Matrix::from_blocks(
        {{Matrix::zero(ra, ra), Matrix::zero(ra, rn), Rational(eps) * d.lam.matrix().transpose()},
         {Matrix::zero(rn, ra), d.phi.matrix(), Matrix::zero(rn, m.b.dim())},
         {d.lam.matrix(), Matrix::zero(m.b.dim(), rn), Matrix::zero(m.b.dim(), m.b.dim())}});
    EXPECT_EQ(p.matrix, expected);
  }
}

TEST(Datum, NonRigidGradedsAreRejected) {
  const auto one = Representation::trivial(free2());
  const auto m1 = Cocycle::split(one, one), m2 = Cocycle::split(one, one);
  EXPECT_THROW(build_datum(m1, m2, Matrix{{1}}, Matrix{{1}}, 1), RigidityError);
  EXPECT_THROW(build_datum(m1, m2, Matrix{{1}}, Matrix{{1}}, -1), CompatibilityError);
}

TEST(Isoaut, RefusesObstructedBlend) {
  Sampler rng(12);
  for (int t = 0; t < 6; ++t) {
    const auto s = rng.self_dual(1, 1, 1);
    if (gamma_obstruction(s.blend, s.datum).is_zero()) continue;
    EXPECT_THROW(isoaut_find(s.blend, s.datum), InconsistentStateError);
  }
}

TEST(DualBlend, IsAnInvolution) {
  Sampler rng(13);
  const auto m = rng.blend(1, 2, 1);
  const auto dd = dual_blend(dual_blend(m));
  EXPECT_EQ(dd, m);
}
