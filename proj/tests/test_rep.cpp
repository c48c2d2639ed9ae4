#include <gtest/gtest.h>

#include "panache/rep.hpp"

using namespace panache;

namespace {

const GroupPresentation klein({'a', 'b'}, {"abAb"});

Representation character(int a, int b) {
  return Representation::checked(klein, 1, {Matrix{{a}}, Matrix{{b}}});
}

}  // namespace

TEST(Group, WordsAndAlphabet) {
  EXPECT_EQ(inverse_word("abAb"), "BaBA");
  const auto letters = klein.parse("aB");
  ASSERT_EQ(letters.size(), 2u);
  EXPECT_EQ(letters[1], (Letter{1, true}));
  EXPECT_THROW(klein.parse("ac"), ParseError);
  EXPECT_THROW(GroupPresentation({'a', 'a'}, {}), ParseError);
  EXPECT_THROW(GroupPresentation({'a'}, {"ab"}), ParseError);
  std::string order;
  for (auto l : klein.alphabet()) order += klein.letter_char(l);
  EXPECT_EQ(order, "aAbB");
}

TEST(Representation, ValidationReportsFailures) {
  const Representation bad(klein, 1, {Matrix{{1}}, Matrix{{2}}});
  const auto r = bad.validate();
  EXPECT_FALSE(r.valid);
  EXPECT_EQ(r.failing_relator, std::optional<Word>("abAb"));
  const Representation singular(GroupPresentation::free("a"), 1, {Matrix{{0}}});
  EXPECT_EQ(singular.validate().singular_generator, std::optional<std::size_t>(0));
  EXPECT_THROW(Representation(klein, 2, {Matrix{{1}}, Matrix{{1}}}), DimensionError);
  EXPECT_NO_THROW(character(-1, 1));
}

TEST(Representation, EvaluateIsLeftToRightProduct) {
  const auto f = GroupPresentation::free("ab");
  const Matrix x{{1, 1}, {0, 1}}, y{{0, -1}, {1, 0}};
  const Representation r(f, 2, {x, y});
  EXPECT_EQ(r.evaluate("abA"), x * y * inverse(x));
  EXPECT_TRUE(r.evaluate("").is_identity());
}

TEST(Hom, CharactersOfKleinBottleGroup) {
  for (int a : {1, -1})
    for (int b : {1, -1})
      for (int c : {1, -1})
        for (int d : {1, -1}) {
          // Hom between characters is nonzero exactly when they agree.
          EXPECT_EQ(hom_dim(character(a, b), character(c, d)), (a == c && b == d) ? 1u : 0u);
        }
}

TEST(Hom, DirectSumAndMorphismChecks) {
  const auto x = character(1, 1), y = character(-1, 1);
  const auto s = direct_sum(x, direct_sum(y, x));
  EXPECT_EQ(hom_dim(s, s), 5u);  // 2x2 block for x plus 1 for y
  EXPECT_THROW(Morphism(x, y, Matrix{{1}}), NotMorphismError);
  EXPECT_THROW(Morphism(x, y, Matrix{{1, 0}}), DimensionError);
  for (const auto& f : hom_space(s, s)) {
    for (std::size_t g = 0; g < 2; ++g) EXPECT_EQ(f.matrix() * s.image(g), s.image(g) * f.matrix());
  }
}

TEST(Duality, DualTransposeAndSwap) {
  const auto f2 = GroupPresentation::free("ab");
  const Representation x(f2, 2, {Matrix{{1, 2}, {0, 1}}, Matrix{{2, 0}, {1, 1}}});
  EXPECT_EQ(dual(dual(x)), x);
  const auto id = Morphism::identity(x);
  EXPECT_EQ(transpose(transpose(id)).matrix(), id.matrix());
  const auto y = Representation::trivial(f2, 3);
  const auto sw = swap_factors(x, y);
  EXPECT_TRUE(compose(swap_factors(y, x), sw).matrix().is_identity());
  // Hom(1, X^ ⊗ X) = End(X).
  EXPECT_EQ(hom_dim(Representation::trivial(f2), tensor(dual(x), x)), hom_dim(x, x));
}
