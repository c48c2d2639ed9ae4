#include <gtest/gtest.h>

#include "panache/monodromy.hpp"
#include "panache/samples.hpp"
#include "support.hpp"

using namespace panache;
using namespace panache::testing;

namespace {

Matrix random_sym(Sampler& rng, std::size_t a, int sign) {
  const Matrix m = rng.matrix(a, a);
  return m + Rational(sign) * m.transpose();
}

W1Element random_w1(Sampler& rng, const ParabolicFrame& f) {
  return {f, random_sym(rng, f.a, -f.epsilon), rng.matrix(f.h, f.a)};
}

std::vector<ParabolicFrame> small_frames() {
  std::vector<ParabolicFrame> out;
  for (int eps : {1, -1})
    for (std::size_t a = 1; a <= 2; ++a)
      for (std::size_t h = 0; h <= 3; ++h) {
        if (eps < 0 && h % 2 == 1) continue;
        out.push_back(ParabolicFrame::standard(a, h, eps));
      }
  return out;
}

Matrix e(std::size_t n, std::size_t i, std::size_t j) { return Matrix::unit(n, n, i, j); }

}  // namespace

TEST(Frame, StandardPairingGivesIdentity) {
  Sampler rng(1);
  for (int eps : {1, -1}) {
    const auto s = rng.self_dual(eps, 1, 1);
    const auto d0 = s.datum;
    const auto m1 = Cocycle::split(d0.m1.quot, d0.m1.sub), m2 = Cocycle::split(d0.m2.quot, d0.m2.sub);
    const auto d = build_datum(m1, m2, d0.phi.matrix(), d0.lam.matrix(), eps);
    const auto m = *solve_blend(m1, m2);
    // λ = 1, split: ψ already has the standard shape.
    EXPECT_TRUE(standard_frame(isoaut_find(m, d)).change_of_basis.is_identity());
  }
}

TEST(Frame, HyperbolicPlane) {
  const auto one = Representation::trivial(free2());
  const auto zero_n = Representation(free2(), 0, {Matrix(0, 0), Matrix(0, 0)});
  const BlendedExtension m{one, zero_n, one, {Matrix(1, 0), Matrix(1, 0)}, {Matrix(0, 1), Matrix(0, 1)},
                           {Matrix{{0}}, Matrix{{0}}}};
  const EpsPairing p{m, Matrix{{0, 1}, {1, 0}}, 1};
  const auto f = standard_frame(p);
  EXPECT_TRUE(f.change_of_basis.is_identity());
  EXPECT_EQ(f.standard_form(), (Matrix{{0, 1}, {1, 0}}));
  EXPECT_EQ(f.h, 0u);
}

TEST(Frame, RandomInstancesReachStandardForm) {
  Sampler rng(2);
  for (int eps : {1, -1}) {
    for (int t = 0; t < 4; ++t) {
      const auto s = rng.self_dual(eps, 1 + t % 2, 1);
      const auto r = autodualize(s.blend, s.datum);
      const auto p = isoaut_find(r.blend, s.datum);
      const auto f = standard_frame(p);
      const Matrix& sm = f.change_of_basis;
      EXPECT_EQ(sm.transpose() * p.matrix * sm, f.standard_form());
      EXPECT_EQ(f.j_h.transpose(), Rational(eps) * f.j_h);
      // The monodromy of M' lies in P.
      for (std::size_t g = 0; g < 2; ++g) {
        EXPECT_NE(filtration_level(f, r.blend.image(g)), FiltrationLevel::NotInP);
      }
    }
  }
}

TEST(Filtration, Levels) {
  const auto f = ParabolicFrame::standard(1, 2, -1);
  EXPECT_EQ(filtration_level(f, Matrix::identity(4)), FiltrationLevel::W2);
  const W1Element u(f, Matrix{{5}}, Matrix{{1}, {0}});
  EXPECT_EQ(filtration_level(f, u.matrix()), FiltrationLevel::W1);
  EXPECT_EQ(filtration_level(f, W1Element(f, Matrix{{5}}, Matrix::zero(2, 1)).matrix()), FiltrationLevel::W2);
  // Scaling A by t and B by 1/t preserves the form: a Levi element.
  EXPECT_EQ(filtration_level(f, Matrix::diagonal_sum({Matrix{{2}}, Matrix::identity(2), Matrix{{Rational(1, 2)}}})),
            FiltrationLevel::P);
  EXPECT_EQ(filtration_level(f, Matrix::diagonal_sum({Matrix{{2}}, Matrix::identity(3)})), FiltrationLevel::NotInP);
  // Preserves the form but moves A: the flip swapping A and B.
  const auto f1 = ParabolicFrame::standard(1, 0, 1);
  EXPECT_EQ(filtration_level(f1, Matrix{{0, 1}, {1, 0}}), FiltrationLevel::NotInP);
  EXPECT_THROW(filtration_level(f, Matrix::identity(3)), DimensionError);
}

TEST(W1Law, MatchesMatrixProduct) {
  Sampler rng(3);
  std::size_t pairs = 0;
  for (const auto& f : small_frames()) {
    for (int t = 0; t < 12; ++t) {
      const auto u = random_w1(rng, f), v = random_w1(rng, f), w = random_w1(rng, f);
      EXPECT_EQ(w1_compose(u, v).frame_matrix(), u.frame_matrix() * v.frame_matrix());
      EXPECT_EQ(w1_compose(w1_compose(u, v), w), w1_compose(u, w1_compose(v, w)));
      EXPECT_EQ(filtration_level(f, u.matrix()) == FiltrationLevel::NotInP, false);
      ++pairs;
    }
    const auto u = random_w1(rng, f);
    EXPECT_EQ(w1_compose(u, W1Element(f, Matrix::zero(f.a, f.a), Matrix::zero(f.h, f.a))), u);
  }
  EXPECT_GE(pairs, 100u);
}

TEST(W1Law, CommutatorIsPhiDifference) {
  Sampler rng(4);
  for (const auto& f : small_frames()) {
    const Matrix nu = rng.matrix(f.h, f.a), nu2 = rng.matrix(f.h, f.a);
    const W1Element u(f, Matrix::zero(f.a, f.a), nu), v(f, Matrix::zero(f.a, f.a), nu2);
    const auto c = w1_commutator(u, v);
    EXPECT_TRUE(c.nu.is_zero());
    EXPECT_EQ(c.z, w1_phi(f, nu, nu2) - w1_phi(f, nu2, nu));
    // Oracle: the group commutator of the matrices.
    const Matrix g = u.frame_matrix(), h = v.frame_matrix();
    EXPECT_EQ(c.frame_matrix(), g * h * inverse(g) * inverse(h));
  }
}

TEST(W1Law, FromRealFrame) {
  Sampler rng(5);
  const auto s = rng.self_dual(-1, 1, 1);
  const auto r = autodualize(s.blend, s.datum);
  const auto f = standard_frame(isoaut_find(r.blend, s.datum));
  for (int t = 0; t < 5; ++t) {
    const auto u = random_w1(rng, f), v = random_w1(rng, f);
    EXPECT_EQ(w1_compose(u, v).matrix(), u.matrix() * v.matrix());
    const auto p = isoaut_find(r.blend, s.datum);
    EXPECT_EQ(u.matrix().transpose() * p.matrix * u.matrix(), p.matrix);
  }
}

TEST(Commutators, DimensionTable) {
  for (const auto& f : small_frames()) {
    const auto r = derived_and_eq4_check(f);
    // dim {z : ᵗz = -εz} for a x a.
    const std::size_t expected = f.epsilon > 0 ? f.a * (f.a - 1) / 2 : f.a * (f.a + 1) / 2;
    EXPECT_EQ(r.antisymmetric_dim, expected);
    EXPECT_EQ(r.abelianization_dim, f.h == 0 ? expected : f.h * f.a);
    EXPECT_EQ(r.commutator_span_dim, f.h == 0 ? 0u : expected);
    EXPECT_TRUE(r.ok());
  }
  EXPECT_EQ(derived_and_eq4_check(ParabolicFrame::standard(2, 2, 1)).commutator_span_dim, 1u);
  EXPECT_EQ(derived_and_eq4_check(ParabolicFrame::standard(2, 2, -1)).commutator_span_dim, 3u);
  EXPECT_EQ(derived_and_eq4_check(ParabolicFrame::standard(1, 2, -1)).commutator_span_dim, 1u);
  EXPECT_EQ(derived_and_eq4_check(ParabolicFrame::standard(1, 0, -1)).antisymmetric_dim, 1u);
  EXPECT_THROW(ParabolicFrame::standard(1, 3, -1), DimensionError);
}

TEST(Lie, ClosureExamples) {
  const Matrix x = e(3, 0, 1);
  EXPECT_EQ(lie_closure({x}, 3).dim(), 1u);
  const auto heis = lie_closure({e(3, 0, 1), e(3, 1, 2)}, 3);
  EXPECT_EQ(heis, LieSubalgebra(3, {e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)}));
  EXPECT_TRUE(heis.is_bracket_closed());
  EXPECT_THROW(lie_closure({Matrix::identity(3)}, 3), NotNilpotentError);
}

TEST(Lie, ClosureInsideW1) {
  Sampler rng(6);
  for (const auto& f : small_frames()) {
    if (f.h == 0) continue;
    std::vector<Matrix> logs;
    for (int t = 0; t < 2; ++t) logs.push_back(nilpotent_log(random_w1(rng, f).matrix()));
    const auto g = lie_closure(logs, f.dim());
    const auto n = w1_lie_algebra(f);
    EXPECT_TRUE(n.contains(g));
    EXPECT_TRUE(g.is_bracket_closed());
    for (const auto& y : g.basis()) {
      const auto level = filtration_level(f, nilpotent_exp(y));
      EXPECT_TRUE(level == FiltrationLevel::W1 || level == FiltrationLevel::W2);
    }
  }
}

TEST(Fullness, HeisenbergCases) {
  const LieSubalgebra n(3, {e(3, 0, 1), e(3, 1, 2), e(3, 0, 2)});
  const auto full = lemma7_fullness(n, n);
  EXPECT_TRUE(full.quotient_full && full.equal && full.induction_holds);
  const auto dn = bracket_span(n, n);
  const auto r = lemma7_fullness(dn, n);
  EXPECT_FALSE(r.quotient_full);
  EXPECT_FALSE(r.equal);
  const auto g = lie_closure({e(3, 0, 1) + e(3, 0, 2), e(3, 1, 2)}, 3);
  const auto r2 = lemma7_fullness(g, n);
  EXPECT_TRUE(r2.quotient_full && r2.equal && r2.induction_holds);
  EXPECT_EQ(g, n);
  EXPECT_THROW(lemma7_fullness(LieSubalgebra(3, {e(3, 1, 0)}), n), MismatchError);
}

TEST(Fullness, AgreesWithSpanComparisonOnW1) {
  Sampler rng(7);
  for (const auto& f : small_frames()) {
    const auto n = w1_lie_algebra(f);
    for (int k = 1; k <= 3; ++k) {
      std::vector<Matrix> logs;
      for (int t = 0; t < k; ++t) {
        // Sparse ν so that some samples miss part of Hom(B, N).
        Matrix nu = rng.matrix(f.h, f.a, 0, 1);
        logs.push_back(nilpotent_log(W1Element(f, Matrix::zero(f.a, f.a), nu).matrix()));
      }
      const auto g = lie_closure(logs, f.dim());
      const auto r = lemma7_fullness(g, n);
      EXPECT_TRUE(r.consistent());
      EXPECT_EQ(r.quotient_full, g == n);
    }
  }
}

TEST(Words, TrivialGradedsQualifyEverywhere) {
  const auto one = Representation::trivial(free2());
  const auto m = *solve_blend(Cocycle{one, one, {Matrix{{1}}, Matrix{{0}}}},
                              Cocycle{one, one, {Matrix{{0}}, Matrix{{1}}}});
  const auto words = graded_trivial_words(m, 4);
  // Oracle: count distinct non-identity matrices over all words of length <= 4.
  std::set<Matrix> seen{Matrix::identity(3)};
  std::vector<Word> layer{""};
  const std::string letters = "aAbB";
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (char c : letters) {
        next.push_back(w + c);
        seen.insert(m.total().evaluate(w + c));
      }
    layer = next;
  }
  EXPECT_EQ(words.size(), seen.size() - 1);
  for (const auto& w : words) {
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j <= i; ++j) EXPECT_EQ(w.log(i, j), 0);
  }
  ASSERT_FALSE(words.empty());
  EXPECT_EQ(words[0].word, "a");
}

TEST(Words, Rot4FindsPowersAndCommutators) {
  const auto r = rot4(-1);
  const auto words = graded_trivial_words(r.blend, 8);
  std::set<Matrix> found;
  for (const auto& w : words) found.insert(r.blend.total().evaluate(w.word));
  for (const Word w : {"aaaa", "abAB", "b", "abA", "ab", "aB"}) {
    const Matrix g = r.blend.total().evaluate(w);
    const bool trivial_on_gradeds =
        g.block(0, 0, 1, 1).is_identity() && g.block(1, 1, 2, 2).is_identity() && g.block(3, 3, 1, 1).is_identity();
    if (g.is_identity()) continue;
    EXPECT_EQ(found.count(g) == 1, trivial_on_gradeds) << w;
  }
  // Fourth powers of short words act trivially on the gradeds.
  for (const Word w : {"a", "ab", "aB", "Ab"}) {
    const Matrix g = r.blend.total().evaluate(w + w + w + w);
    EXPECT_TRUE(g.is_identity() || found.count(g) == 1) << w;
  }
}

TEST(Rot4, Rot4AntisymmetricCase) {
  const auto r = rot4(-1);
  EXPECT_EQ(hom_dim(r.blend.n, r.blend.a), 0u);
  const auto rep = theorem2_verify(r.blend, r.datum, 8);
  EXPECT_TRUE(rep.hypothesis_certified);
  EXPECT_EQ(rep.w2_dim, 1u);
  EXPECT_EQ(rep.w2_expected, 1u);
  EXPECT_TRUE(rep.conclusion_holds);
  EXPECT_TRUE(rep.decomposition_holds);
}

TEST(Rot4, Rot4SymmetricAutodual) {
  const auto r = rot4(1);
  EXPECT_TRUE(gamma_obstruction(r.blend, r.datum).is_zero());
  const auto rep = theorem2_verify(r.blend, r.datum, 8);
  EXPECT_TRUE(rep.hypothesis_certified);
  EXPECT_EQ(rep.w2_dim, 0u);
  EXPECT_EQ(rep.w2_expected, 0u);
  EXPECT_TRUE(rep.decomposition_holds);
}

TEST(Rot4, Rot4SymmetricNotAutodual) {
  const auto r = rot4(1, 1);
  EXPECT_FALSE(gamma_obstruction(r.blend, r.datum).is_zero());
  const auto rep = theorem2_verify(r.blend, r.datum, 8);
  EXPECT_TRUE(rep.hypothesis_certified);
  EXPECT_FALSE(rep.delta_zero);
  EXPECT_EQ(rep.w2_dim, 1u);
  EXPECT_EQ(rep.w2_delta, 1u);
  EXPECT_EQ(rep.w2_autodual, 0u);
  EXPECT_TRUE(rep.decomposition_holds);
}
