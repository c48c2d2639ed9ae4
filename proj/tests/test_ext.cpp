#include <gtest/gtest.h>

#include <random>

#include "panache/ext.hpp"

using namespace panache;

namespace {

// Corner of a word on block-triangular images, summed letter by letter:
// sum_i rho_A(prefix) c(letter_i) rho_B(suffix). Independent of matrix products
// of the full blocks.
Matrix fox_corner(const Representation& a, const Representation& b, const std::vector<Matrix>& c,
                  const Word& w) {
  const auto& pres = a.presentation();
  const auto letters = pres.parse(w);
  Matrix sum(a.dim(), b.dim());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    Matrix pre = Matrix::identity(a.dim()), post = Matrix::identity(b.dim());
    for (std::size_t k = 0; k < i; ++k) pre = pre * a.letter_image(letters[k]);
    for (std::size_t k = i + 1; k < letters.size(); ++k) post = post * b.letter_image(letters[k]);
    const auto g = letters[i].generator;
    const Matrix d = letters[i].inverse ? -(a.inverse_image(g) * c[g] * b.inverse_image(g)) : c[g];
    sum = sum + pre * d * post;
  }
  return sum;
}

// dim Ext^1(B, A) = dim Z^1 - (ab - dim Hom(B, A)), Z^1 from the Fox system.
std::size_t ext_dim_oracle(const Representation& b, const Representation& a) {
  const auto& pres = a.presentation();
  const std::size_t n = pres.generator_count() * a.dim() * b.dim();
  std::vector<Vector> rows;
  Matrix sys(0, n);
  std::vector<Vector> columns;
  for (std::size_t k = 0; k < n; ++k) {
    Vector e(n, Rational(0));
    e[k] = 1;
    const auto blocks = unflatten(e, pres.generator_count(), a.dim(), b.dim());
    std::vector<Matrix> corners;
    for (const auto& r : pres.relators()) corners.push_back(fox_corner(a, b, blocks, r));
    columns.push_back(flatten(corners));
  }
  const std::size_t z1 = columns.empty() || columns[0].empty()
                             ? n
                             : n - rank(Matrix::from_columns(columns[0].size(), columns));
  return z1 - (a.dim() * b.dim() - hom_dim(b, a));
}

const GroupPresentation klein({'a', 'b'}, {"abAb"});
const GroupPresentation z2({'a', 'b'}, {"abAB"});
const GroupPresentation f2 = GroupPresentation::free("ab");

Representation chr(const GroupPresentation& p, int a, int b) {
  return Representation::checked(p, 1, {Matrix{{a}}, Matrix{{b}}});
}

Representation random_rep(std::mt19937& rng, std::size_t d) {
  std::uniform_int_distribution<int> u(-2, 2);
  std::vector<Matrix> imgs;
  for (int g = 0; g < 2; ++g) {
    // Unit upper-triangular times a signed permutation keeps the entries integral.
    Matrix m = Matrix::identity(d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j) m(i, j) = u(rng);
    if (rng() % 2 && d > 1) m = Matrix::from_blocks({{Matrix::zero(1, d - 1), Matrix{{1}}},
                                                      {Matrix::identity(d - 1), Matrix::zero(d - 1, 1)}}) * m;
    imgs.push_back(m);
  }
  return {f2, d, imgs};
}

}  // namespace

TEST(ExtSpace, DimensionsMatchFoxOracle) {
  for (auto* p : {&klein, &z2})
    for (int a1 : {1, -1})
      for (int a2 : {1, -1})
        for (int b1 : {1, -1})
          for (int b2 : {1, -1}) {
            const auto a = chr(*p, a1, a2), b = chr(*p, b1, b2);
            EXPECT_EQ(ext_space(b, a)->dim(), ext_dim_oracle(b, a));
          }
  // Frozen: H^1(Z^2; Q) = Q^2.
  const auto one = Representation::trivial(z2);
  EXPECT_EQ(ext_space(one, one)->dim(), 2u);
}

TEST(ExtSpace, FreeGroupEulerCharacteristic) {
  std::mt19937 rng(7);
  for (int t = 0; t < 8; ++t) {
    const auto a = random_rep(rng, 1 + t % 2), b = random_rep(rng, 1 + t % 3);
    // Over F_2: dim Ext^1(B, A) = dim Hom(B, A) + ab.
    EXPECT_EQ(ext_space(b, a)->dim(), hom_dim(b, a) + a.dim() * b.dim());
    EXPECT_EQ(ext_space(b, a)->dim(), ext_dim_oracle(b, a));
  }
}

TEST(ExtSpace, ClassesCoboundariesAndErrors) {
  const auto one = Representation::trivial(z2);
  const auto sp = ext_space(one, one);
  EXPECT_TRUE(sp->is_coboundary({Matrix{{0}}, Matrix{{0}}}));
  const auto c = sp->class_of({Matrix{{3}}, Matrix{{-1}}});
  EXPECT_FALSE(c.is_zero());
  EXPECT_EQ(c + (-c), sp->zero());
  EXPECT_EQ(sp->class_of(c.representative()), c);
  EXPECT_THROW(sp->class_of({Matrix{{1}}}), DimensionError);
  const auto m = chr(klein, -1, 1), triv = Representation::trivial(klein);
  const auto kn = ext_space(m, triv);
  // For a non-cocycle the relator corner does not vanish.
  std::vector<Matrix> bad{Matrix{{0}}, Matrix{{1}}};
  EXPECT_EQ(kn->is_cocycle(bad), fox_corner(triv, m, bad, "abAb").is_zero());
}

TEST(ExtSpace, CoboundaryClassesVanish) {
  std::mt19937 rng(2);
  for (int t = 0; t < 5; ++t) {
    const auto a = random_rep(rng, 2), b = random_rep(rng, 2);
    const auto sp = ext_space(b, a);
    Matrix f(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) f(i, j) = static_cast<int>(rng() % 5) - 2;
    EXPECT_TRUE(sp->class_of(sp->coboundary(f)).is_zero());
  }
}

TEST(ExtFunctoriality, PushPullAndDual) {
  std::mt19937 rng(9);
  for (int t = 0; t < 5; ++t) {
    const auto a = random_rep(rng, 2), b = random_rep(rng, 1);
    const auto sp = ext_space(b, a);
    for (std::size_t i = 0; i < sp->dim(); ++i) {
      const auto c = sp->basis_class(i);
      EXPECT_EQ(pushforward(Morphism::identity(a), c), c);
      EXPECT_EQ(pullback(Morphism::identity(b), c), c);
      EXPECT_EQ(pushforward(Rational(3) * Morphism::identity(a), c), Rational(3) * c);
      // Dual twice is the identity; the dual extension's total is the dual total
      // up to reordering.
      const auto d = dual_class(c);
      EXPECT_EQ(dual_class(d, sp), c);
      EXPECT_TRUE(dual_cocycle(c.representative()).satisfies_relators());
    }
  }
}

TEST(ExtTransport, FIsAnIsomorphism) {
  std::mt19937 rng(4);
  for (int t = 0; t < 4; ++t) {
    const auto a = random_rep(rng, 1 + t % 2), b = random_rep(rng, 2);
    const auto sp = ext_space(b, a);
    const auto target = ext_space(Representation::trivial(f2), tensor(dual(b), a));
    EXPECT_EQ(target->dim(), sp->dim());
    for (std::size_t i = 0; i < sp->dim(); ++i) {
      const auto c = sp->basis_class(i);
      const auto w = f_transport(c, target);
      EXPECT_EQ(f_transport_inv(w, sp), c);
    }
  }
  // Klein bottle characters too.
  const auto a = chr(klein, -1, 1), b = Representation::trivial(klein);
  const auto sp = ext_space(b, a);
  ASSERT_EQ(sp->dim(), 1u);
  EXPECT_FALSE(f_transport(sp->basis_class(0)).is_zero());
}

TEST(ExtDuality, EpsSplitIsComplete) {
  std::mt19937 rng(12);
  for (int t = 0; t < 4; ++t) {
    const auto b = random_rep(rng, 2);
    const auto sp = ext_space(b, dual(b));
    const auto s = eps_split(sp);
    EXPECT_EQ(s.plus.size() + s.minus.size(), sp->dim());
    for (const auto& c : s.plus) EXPECT_EQ(dual_class(c, sp), c);
    for (const auto& c : s.minus) EXPECT_EQ(dual_class(c, sp), -c);
  }
  // Free group, B = 1: Ext(1, 1) = Q^2 and duality is c ↦ -c.
  const auto one = Representation::trivial(f2);
  const auto s = eps_split(ext_space(one, one));
  EXPECT_EQ(s.plus.size(), 0u);
  EXPECT_EQ(s.minus.size(), 2u);
}

TEST(ExtTransport, DualSignRule) {
  std::mt19937 rng(44);
  for (int t = 0; t < 6; ++t) {
    const auto a = random_rep(rng, 1 + t % 2), b = random_rep(rng, 1 + (t / 2) % 2);
    const auto sp = ext_space(b, a);
    for (std::size_t i = 0; i < sp->dim(); ++i) {
      const auto c = sp->basis_class(i);
      const auto lhs = f_transport(dual_class(c));
      const auto rhs = t_involution(f_transport(c), dual(b), a, lhs.space());
      EXPECT_EQ(lhs, -rhs);
    }
  }
}

TEST(ExtTransport, EpsPartsMatchSwapEigenspaces) {
  std::mt19937 rng(45);
  for (int t = 0; t < 4; ++t) {
    const auto b = random_rep(rng, 1 + t % 2);
    const auto bd = dual(b);
    const auto sp = ext_space(b, bd);
    const auto target = ext_space(Representation::trivial(f2), tensor(bd, bd));
    const auto split = eps_split(sp);
    for (int eps : {1, -1}) {
      // t-eigenvalue -eps on the transported part.
      std::vector<ExtClass> images;
      for (const auto& c : eps_part(split, eps)) {
        const auto w = f_transport(c, target);
        EXPECT_EQ(t_involution(w, bd, bd, target), Rational(-eps) * w);
        images.push_back(w);
      }
      Matrix tm = coordinate_matrix(*target, target->dim(),
                                    [&](const ExtClass& w) { return t_involution(w, bd, bd, target); });
      const auto eig = kernel_basis(tm + Rational(eps) * Matrix::identity(target->dim()));
      EXPECT_EQ(class_span(target->dim(), images), Span(target->dim(), eig));
    }
  }
}
