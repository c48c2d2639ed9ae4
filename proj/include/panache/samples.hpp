#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "panache/autodual.hpp"
#include "panache/blend.hpp"

namespace panache {

/// Random instances for property checks. Only mt19937_64 output is used
/// (never a std distribution), so a seed gives the same instance everywhere.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) {
    return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  Matrix matrix(std::size_t r, std::size_t c, int lo = -2, int hi = 2) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = integer(lo, hi);
    return m;
  }

  Matrix invertible(std::size_t d) {
    while (true) {
      Matrix m = matrix(d, d);
      if (is_invertible(m)) return m;
    }
  }

  std::vector<Matrix> blocks(std::size_t count, std::size_t r, std::size_t c) {
    std::vector<Matrix> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(matrix(r, c));
    return out;
  }

  Representation representation(const GroupPresentation& free, std::size_t d) {
    std::vector<Matrix> images;
    for (std::size_t g = 0; g < free.generator_count(); ++g) images.push_back(invertible(d));
    return {free, d, images};
  }

  ExtClass ext_class(const std::shared_ptr<const ExtSpace>& sp) {
    Vector v(sp->dim());
    for (auto& e : v) e = integer(-2, 2);
    return {sp, v};
  }

  /// A blend over the free group with generic (rigid) gradeds.
  BlendedExtension blend(std::size_t da, std::size_t dn, std::size_t db) {
    const auto f2 = GroupPresentation::free("ab");
    Representation a, n, b;
    do {
      a = representation(f2, da), n = representation(f2, dn), b = representation(f2, db);
    } while (!rigidity(a, n, b).rigid());
    const Cocycle m1{a, n, blocks(2, da, dn)};
    const Cocycle m2{n, b, blocks(2, dn, db)};
    auto m = *solve_blend(m1, m2);
    return torsor_act(m, ext_class(ext_space(b, a)));
  }

  /// A blend over the Klein bottle group <a, b | abAb> on characters
  /// A = B = (p, q), N = (-p, q); faces drawn from Z^1 until a corner exists.
  BlendedExtension klein_blend() {
    static const GroupPresentation k({'a', 'b'}, {"abAb"});
    static const Rational ps[] = {1, -1, 2, -2, make_rational(1, 2)};
    while (true) {
      const Rational p = ps[integer(0, 4)], q = integer(0, 1) ? 1 : -1;
      const Representation a(k, 1, {Matrix{{p}}, Matrix{{q}}});
      const Representation n(k, 1, {Matrix{{-p}}, Matrix{{q}}});
      const Representation& b = a;
      auto face = [&](const Representation& quot, const Representation& sub) {
        auto c = ext_class(ext_space(quot, sub)).representative();
        const Matrix f = matrix(sub.dim(), quot.dim());
        for (std::size_t g = 0; g < 2; ++g) c.blocks[g] = c.blocks[g] + f * quot.image(g) - sub.image(g) * f;
        return c;
      };
      const auto m = solve_blend(face(n, a), face(b, n));
      if (m) return torsor_act(*m, ext_class(ext_space(b, a)));
    }
  }

  struct SelfDual {
    BlendedExtension blend;
    DualityDatum datum;
  };

  /// A = B^ with λ = id, N = W ⊕ W^ with φ = [[0, I], [εI, 0]], faces made
  /// compatible by construction and a random corner.
  SelfDual self_dual(int epsilon, std::size_t db, std::size_t dw) {
    require_sign(epsilon);
    const auto f2 = GroupPresentation::free("ab");
    Representation b, w, n, a;
    do {
      b = representation(f2, db);
      w = representation(f2, dw);
      n = direct_sum(w, dual(w));
      a = dual(b);
    } while (hom_dim(n, a) != 0 || hom_dim(b, n) != 0);
    const std::size_t dn = 2 * dw;
    const Matrix phi = Matrix::from_blocks(
        {{Matrix::zero(dw, dw), Matrix::identity(dw)},
         {Rational(epsilon) * Matrix::identity(dw), Matrix::zero(dw, dw)}});
    const Cocycle m2{n, b, blocks(2, dn, db)};
    const auto yd = dual_blocks(m2);
    const Matrix f = matrix(db, dn);
    std::vector<Matrix> x;
    for (std::size_t g = 0; g < 2; ++g) x.push_back(yd[g] * phi + f * n.image(g) - a.image(g) * f);
    const Cocycle m1{a, n, x};
    auto m = *solve_blend(m1, m2);
    m = torsor_act(m, ext_class(ext_space(b, a)));
    return {m, build_datum(m1, m2, phi, Matrix::identity(db), epsilon)};
  }

 private:
  std::mt19937_64 rng_;
};

/// The rot4 family over F_2: A = B = 1, N = Q^2 with a acting by the quarter
/// turn and b trivially; φ = J (ε = -1) or I (ε = +1), λ = 1. The blend is
/// autodual, then its corner at a is shifted by `corner_a`.
inline Sampler::SelfDual rot4(int epsilon, const Rational& corner_a = 0) {
  require_sign(epsilon);
  const auto f2 = GroupPresentation::free("ab");
  const auto one = Representation::trivial(f2);
  const Representation n(f2, 2, {Matrix{{0, -1}, {1, 0}}, Matrix::identity(2)});
  const Matrix phi = epsilon < 0 ? Matrix{{0, 1}, {-1, 0}} : Matrix::identity(2);
  const Cocycle m2{n, one, {Matrix{{1}, {0}}, Matrix{{0}, {1}}}};
  const auto yd = dual_blocks(m2);
  const Cocycle m1{one, n, {yd[0] * phi, yd[1] * phi}};
  auto d = build_datum(m1, m2, phi, Matrix{{1}}, epsilon);
  auto m = autodualize(*solve_blend(m1, m2), d).blend;
  m.z[0] = m.z[0] + Matrix{{corner_a}};
  return {m, d};
}

}  // namespace panache
