#pragma once

#include <random>

#include "panache/ext.hpp"

namespace panache::testing {

inline const GroupPresentation& free2() {
  static const GroupPresentation p = GroupPresentation::free("ab");
  return p;
}

inline const GroupPresentation& klein() {
  static const GroupPresentation p({'a', 'b'}, {"abAb"});
  return p;
}

inline const GroupPresentation& z2() {
  static const GroupPresentation p({'a', 'b'}, {"abAB"});
  return p;
}

inline Representation character(const GroupPresentation& p, int a, int b) {
  return Representation::checked(p, 1, {Matrix{{a}}, Matrix{{b}}});
}

inline Matrix random_integer_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -2,
                                    int hi = 2) {
  std::uniform_int_distribution<int> u(lo, hi);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = u(rng);
  return m;
}

inline Matrix random_invertible(std::mt19937& rng, std::size_t d) {
  while (true) {
    Matrix m = random_integer_matrix(rng, d, d);
    if (is_invertible(m)) return m;
  }
}

/// Generic representation of the free group on a, b.
inline Representation random_free_rep(std::mt19937& rng, std::size_t d) {
  return {free2(), d, {random_invertible(rng, d), random_invertible(rng, d)}};
}

inline std::vector<Matrix> random_blocks(std::mt19937& rng, std::size_t count, std::size_t r,
                                         std::size_t c) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(random_integer_matrix(rng, r, c));
  return out;
}

/// A random class of an Ext space with small integer coordinates.
inline ExtClass random_class(std::mt19937& rng, const std::shared_ptr<const ExtSpace>& sp) {
  std::uniform_int_distribution<int> u(-2, 2);
  Vector v(sp->dim());
  for (auto& e : v) e = u(rng);
  return {sp, v};
}

}  // namespace panache::testing

