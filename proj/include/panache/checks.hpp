#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "panache/monodromy.hpp"
#include "panache/samples.hpp"

namespace panache {

struct CheckResult {
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  std::string name;
  bool pass = true;
  std::size_t instances = 0;
  std::string failure;  // first failed assertion

  void expect(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      failure = what + " (instance " + std::to_string(instances) + ")";
    }
  }
};

struct CheckOptions {
  std::uint64_t seed = 1;
  std::size_t instances = 50;  // randomized instances per suite
  std::vector<int> signs{1, -1};
  std::size_t max_length = 8;
};

namespace detail {

inline std::shared_ptr<const ExtSpace> ext_ba(const BlendedExtension& m) { return ext_space(m.b, m.a); }

inline Matrix j_into_m1(const BlendedExtension& m) {
  const std::size_t d = m.a.dim() + m.n.dim();
  return Matrix::identity(d).block(0, 0, d, m.a.dim());
}

// A cocycle of B with values in A that is not a coboundary in general.
inline std::vector<Matrix> random_z1(Sampler& rng, const BlendedExtension& m) {
  auto c = rng.ext_class(ext_ba(m)).representative();
  const Matrix f = rng.matrix(m.a.dim(), m.b.dim());
  for (std::size_t g = 0; g < c.blocks.size(); ++g)
    c.blocks[g] = c.blocks[g] + f * m.b.image(g) - m.a.image(g) * f;
  return c.blocks;
}

inline std::vector<ParabolicFrame> small_frames() {
  std::vector<ParabolicFrame> out;
  for (int eps : {1, -1})
    for (std::size_t a = 1; a <= 2; ++a)
      for (std::size_t h = 0; h <= 3; ++h)
        if (eps > 0 || h % 2 == 0) out.push_back(ParabolicFrame::standard(a, h, eps));
  return out;
}

inline std::size_t antisymmetric_dim(std::size_t a, int eps) { return eps > 0 ? a * (a - 1) / 2 : a * (a + 1) / 2; }

}  // namespace detail

/// Free-group faces always blend; the Heisenberg faces over Z^2 never do.
inline CheckResult check_panachability(const CheckOptions& o) {
  CheckResult r{"lemma1"};
  Sampler rng(o.seed);
  const auto f2 = GroupPresentation::free("ab");
  for (std::size_t t = 0; t < o.instances; ++t, ++r.instances) {
    const std::size_t da = 1 + t % 2, dn = 1 + (t / 2) % 2, db = 1 + (t / 4) % 2;
    const auto a = rng.representation(f2, da), n = rng.representation(f2, dn), b = rng.representation(f2, db);
    const auto m = solve_blend(Cocycle{a, n, rng.blocks(2, da, dn)}, Cocycle{n, b, rng.blocks(2, dn, db)});
    r.expect(m && m->satisfies_relators(), "free-group faces did not blend");
  }
  const GroupPresentation z2({'a', 'b'}, {"abAB"});
  const auto one = Representation::trivial(z2);
  r.expect(!solve_blend(Cocycle{one, one, {Matrix{{1}}, Matrix{{0}}}}, Cocycle{one, one, {Matrix{{0}}, Matrix{{1}}}}),
           "Heisenberg faces over Z^2 blended");
  ++r.instances;
  return r;
}

/// Free and transitive action of Ext(B, A), over F_2 and the Klein bottle group.
inline CheckResult check_torsor(const CheckOptions& o) {
  CheckResult r{"lemma2"};
  Sampler rng(o.seed + 2);
  const std::size_t klein = std::max<std::size_t>(1, o.instances / 5);
  for (std::size_t t = 0; t < o.instances + klein; ++t, ++r.instances) {
    const auto m = t < o.instances ? rng.blend(1, 1 + t % 2, 1 + (t / 2) % 2) : rng.klein_blend();
    const auto sp = detail::ext_ba(m);
    const auto u = rng.ext_class(sp), v = rng.ext_class(sp);
    r.expect(is_isomorphic(torsor_act(m, sp->zero()), m).has_value(), "0 does not act trivially");
    r.expect(is_isomorphic(torsor_act(torsor_act(m, u), v), torsor_act(m, u + v)).has_value(),
             "action is not additive");
    r.expect(is_isomorphic(torsor_act(m, u), m).has_value() == u.is_zero(), "action is not free");
    r.expect(torsor_difference(m, torsor_act(m, u), sp) == u, "difference does not recover the class");
    BlendedExtension other = m;
    const auto extra = detail::random_z1(rng, m);
    for (std::size_t g = 0; g < other.z.size(); ++g) other.z[g] = other.z[g] + extra[g];
    r.expect(other.satisfies_relators(), "perturbed blend is invalid");
    r.expect(is_isomorphic(torsor_act(m, torsor_difference(m, other, sp)), other).has_value(),
             "action is not transitive");
    const auto m1 = m.m1().total();
    const auto over = ext_space(m.b, m1);
    const Morphism j(m.a, m1, detail::j_into_m1(m));
    r.expect(over->class_of(torsor_act(m, u).over_b()) == over->class_of(m.over_b()) + pushforward(j, u, over),
             "class over B is not shifted by j_*U");
  }
  return r;
}

/// Both constructions of M * U agree, and the canonical isomorphism is blended.
inline CheckResult check_action_constructions(const CheckOptions& o) {
  CheckResult r{"a1"};
  Sampler rng(o.seed + 3);
  const std::size_t klein = std::max<std::size_t>(1, o.instances / 5);
  for (std::size_t t = 0; t < o.instances + klein; ++t, ++r.instances) {
    const auto m = t < o.instances ? rng.blend(1 + (t / 2) % 2, 1 + t % 2, 1) : rng.klein_blend();
    const auto u = rng.ext_class(detail::ext_ba(m));
    const auto mu = build_MU(m, u), mu_prime = build_MU_prime(m, u);
    const auto over = ext_space(m.b, m.m1().total());
    const auto under = ext_space(m.m2().total(), m.a);
    r.expect(over->class_of(mu.blend.over_b()) == over->class_of(mu_prime.blend.over_b()), "classes over B differ");
    r.expect(under->class_of(mu.blend.under_a()) == under->class_of(mu_prime.blend.under_a()),
             "classes under A differ");
    const auto f = canonical_iso(m, u);
    r.expect(is_blended_iso(f.source, f.target, f.matrix), "canonical iso does not validate");
  }
  return r;
}

/// f : B -> N induces id - ι f ϖ on M2. N = B so that Hom(B, N) is nonzero.
inline CheckResult check_induced_automorphism(const CheckOptions& o) {
  CheckResult r{"a2"};
  Sampler rng(o.seed + 4);
  const auto f2 = GroupPresentation::free("ab");
  for (std::size_t t = 0; t < o.instances; ++t, ++r.instances) {
    const std::size_t da = 1 + t % 2, db = 1 + (t / 2) % 2;
    const auto a = rng.representation(f2, da), b = rng.representation(f2, db);
    const auto& n = b;
    const auto m = *solve_blend(Cocycle{a, n, rng.blocks(2, da, db)}, Cocycle{n, b, rng.blocks(2, db, db)});
    Matrix f = Matrix::zero(db, db);
    for (const auto& h : hom_space(b, n)) f = f + Rational(rng.integer(-3, 3)) * h.matrix();
    const Matrix expected = Matrix::identity(2 * db) - Matrix::zero(2 * db, 2 * db).with_block(0, db, f);
    try {
      r.expect(induced_m2_automorphism(m, Morphism(b, n, f)) == expected, "induced automorphism differs");
    } catch (const Error& e) {
      r.expect(false, e.what());
    }
  }
  return r;
}

/// dual(γ) = -εγ and γ_{M*δ} = γ + δ' - ε dual(δ').
inline CheckResult check_gamma_symmetry(const CheckOptions& o) {
  CheckResult r{"lemma3"};
  Sampler rng(o.seed + 5);
  for (int eps : o.signs) {
    for (std::size_t t = 0; t < o.instances; ++t, ++r.instances) {
      const auto s = rng.self_dual(eps, 1 + t % 2, 1);
      const auto gamma = gamma_obstruction(s.blend, s.datum);
      r.expect(dual_class(gamma, gamma.space()) == Rational(-eps) * gamma, "dual(γ) != -εγ");
      const auto delta = rng.ext_class(detail::ext_ba(s.blend));
      const auto shifted = gamma_obstruction(torsor_act(s.blend, delta), s.datum, gamma.space());
      const auto dp = pushforward(s.datum.lam, delta, gamma.space());
      r.expect(shifted == gamma + dp - Rational(eps) * dual_class(dp, gamma.space()), "translation law fails");
    }
  }
  return r;
}

/// autodualize kills γ, δ lies in Ext_{-ε}, is idempotent, and is unique up to Ext_ε.
inline CheckResult check_autodualize(const CheckOptions& o) {
  CheckResult r{"thm1"};
  Sampler rng(o.seed + 6);
  for (int eps : o.signs) {
    for (std::size_t t = 0; t < o.instances; ++t, ++r.instances) {
      const auto s = rng.self_dual(eps, 1 + t % 2, 1);
      const auto res = autodualize(s.blend, s.datum);
      r.expect(gamma_obstruction(res.blend, s.datum).is_zero(), "γ of the autodualized blend is nonzero");
      r.expect(dual_class(res.delta_prime, res.delta_prime.space()) == Rational(-eps) * res.delta_prime,
               "δ' is not in Ext_{-ε}");
      const auto again = autodualize(res.blend, s.datum);
      r.expect(again.delta_prime.is_zero() && is_isomorphic(again.blend, res.blend).has_value(),
               "autodualize is not idempotent");
      const auto split = eps_split(res.delta_prime.space());
      const Morphism lam_inv(dual(s.blend.b), s.blend.a, inverse(s.datum.lam.matrix()));
      for (const auto& c : eps_part(split, eps)) {
        const auto other = torsor_act(res.blend, pushforward(lam_inv, c, detail::ext_ba(s.blend)));
        r.expect(gamma_obstruction(other, s.datum).is_zero(), "shift by Ext_ε broke autoduality");
        const auto diff = pushforward(s.datum.lam, torsor_difference(res.blend, other), c.space());
        r.expect(dual_class(diff, c.space()) == Rational(eps) * diff, "autodual blends differ outside Ext_ε");
      }
    }
  }
  return r;
}

/// The pairing of an autodual blend and its space of choices.
inline CheckResult check_pairing_suite(const CheckOptions& o) {
  CheckResult r{"lemma4"};
  Sampler rng(o.seed + 7);
  for (int eps : o.signs) {
    for (std::size_t t = 0; t < o.instances; ++t, ++r.instances) {
      const auto s = rng.self_dual(eps, 1 + t % 2, 1);
      const auto m = autodualize(s.blend, s.datum).blend;
      const auto p = isoaut_find(m, s.datum);
      const auto rep = check_pairing(p);
      r.expect(rep.eps_symmetric, "ψ' is not ε-symmetric");
      r.expect(rep.invariant, "ψ' is not invariant");
      r.expect(rep.nondegenerate, "ψ' is degenerate");
      r.expect(rep.a_isotropic, "A is not isotropic");
      r.expect(rep.a_perp_is_m1, "A^⊥ != M1");
      const auto dirs = isoaut_directions(m, s.datum);
      r.expect(dirs.size() == hom_eps_part(hom_eps_split(m.b), eps).size(), "direction count != dim Hom_ε(B, B^)");
      const std::size_t off = m.a.dim() + m.n.dim();
      for (const auto& w : dirs) {
        EpsPairing moved = p;
        moved.matrix = p.matrix + Matrix::zero(p.matrix.rows(), p.matrix.cols()).with_block(off, off, w);
        r.expect(check_pairing(moved).ok(), "moving along Hom_ε(B, B^) breaks the pairing");
      }
    }
  }
  return r;
}

/// F(č) = -t_* F(c), the ε-split of Ext(B, B^), and F(Ext_ε) = Ker(t + ε).
inline CheckResult check_ext_sign_rule(const CheckOptions& o) {
  CheckResult r{"lemma5"};
  Sampler rng(o.seed + 8);
  const auto f2 = GroupPresentation::free("ab");
  const std::size_t count = std::max<std::size_t>(10, o.instances / 5);
  for (std::size_t t = 0; t < count; ++t, ++r.instances) {
    const auto a = rng.representation(f2, 1 + t % 2), b = rng.representation(f2, 1 + (t / 2) % 2);
    const auto sp = ext_space(b, a);
    for (std::size_t i = 0; i < sp->dim(); ++i) {
      const auto c = sp->basis_class(i);
      const auto lhs = f_transport(dual_class(c));
      r.expect(lhs == -t_involution(f_transport(c), dual(b), a, lhs.space()), "F(č) != -t_* F(c)");
    }
    const auto bd = dual(b);
    const auto self = ext_space(b, bd);
    const auto split = eps_split(self);
    r.expect(split.plus.size() + split.minus.size() == self->dim(), "dim Ext_+ + dim Ext_- != dim Ext");
    const auto target = ext_space(Representation::trivial(f2), tensor(bd, bd));
    const Matrix tm = coordinate_matrix(*target, target->dim(),
                                        [&](const ExtClass& w) { return t_involution(w, bd, bd, target); });
    for (int eps : {1, -1}) {
      std::vector<ExtClass> images;
      for (const auto& c : eps_part(split, eps)) images.push_back(f_transport(c, target));
      const auto eig = kernel_basis(tm + Rational(eps) * Matrix::identity(target->dim()));
      r.expect(class_span(target->dim(), images) == Span(target->dim(), eig), "F(Ext_ε) != (-ε)-eigenspace of t");
    }
  }
  return r;
}

/// The W-1 group law against matrix multiplication on standard frames.
inline CheckResult check_w1_law(const CheckOptions& o) {
  CheckResult r{"lemma6"};
  Sampler rng(o.seed + 9);
  const auto frames = detail::small_frames();
  const std::size_t per = std::max<std::size_t>(1, (std::max<std::size_t>(o.instances, 100) + frames.size() - 1) / frames.size());
  for (const auto& f : frames) {
    for (std::size_t t = 0; t < per; ++t, ++r.instances) {
      auto random_w1 = [&] {
        const Matrix m = rng.matrix(f.a, f.a);
        return W1Element(f, m - Rational(f.epsilon) * m.transpose(), rng.matrix(f.h, f.a));
      };
      const auto u = random_w1(), v = random_w1();
      r.expect(w1_compose(u, v).frame_matrix() == u.frame_matrix() * v.frame_matrix(), "law != matrix product");
      r.expect(filtration_level(f, u.matrix()) != FiltrationLevel::NotInP, "W-1 element outside P");
      const Matrix g = u.frame_matrix(), h = v.frame_matrix();
      r.expect(w1_commutator(u, v).frame_matrix() == g * h * inverse(g) * inverse(h), "commutator mismatch");
    }
  }
  return r;
}

/// Commutators fill {ᵗz = -εz} and the abelianization has dimension h·a.
inline CheckResult check_commutators(const CheckOptions&) {
  CheckResult r{"eq4"};
  for (const auto& f : detail::small_frames()) {
    const auto rep = derived_and_eq4_check(f);
    const auto anti = detail::antisymmetric_dim(f.a, f.epsilon);
    const auto label = "a=" + std::to_string(f.a) + " h=" + std::to_string(f.h) + " eps=" + std::to_string(f.epsilon);
    r.expect(rep.antisymmetric_dim == anti, "dim {ᵗz = -εz} wrong at " + label);
    r.expect(rep.n_dim - rep.antisymmetric_dim == f.h * f.a, "dim W-1/W-2 != h·a at " + label);
    if (f.h > 0) {
      r.expect(rep.commutators_fill && rep.commutator_span_dim == anti, "commutators do not fill at " + label);
      r.expect(rep.abelianization_dim == f.h * f.a, "abelianization != h·a at " + label);
    }
    r.expect(rep.ok(), "derived algebra is not the corner at " + label);
    ++r.instances;
  }
  return r;
}

/// Fullness criterion against direct comparison, with the induction replayed.
inline CheckResult check_fullness(const CheckOptions& o) {
  CheckResult r{"lemma7"};
  Sampler rng(o.seed + 10);
  auto e = [](std::size_t i, std::size_t j) { return Matrix::unit(3, 3, i, j); };
  auto record = [&](const LieSubalgebra& g, const LieSubalgebra& n) {
    const auto rep = lemma7_fullness(g, n);
    r.expect(rep.quotient_full == (g == n), "criterion disagrees with span comparison");
    r.expect(!rep.quotient_full || rep.induction_holds, "induction step fails");
    ++r.instances;
  };
  const LieSubalgebra heis(3, {e(0, 1), e(1, 2), e(0, 2)});
  record(heis, heis);
  record(bracket_span(heis, heis), heis);
  record(lie_closure({e(0, 1) + e(0, 2), e(1, 2)}, 3), heis);
  record(lie_closure({e(0, 1)}, 3), heis);
  for (const auto& f : detail::small_frames()) {
    const auto n = w1_lie_algebra(f);
    for (std::size_t k = 1; k <= 3; ++k) {
      std::vector<Matrix> logs;
      for (std::size_t t = 0; t < k; ++t) {
        const Matrix z = rng.matrix(f.a, f.a, 0, 1);
        const W1Element u(f, z - Rational(f.epsilon) * z.transpose(), rng.matrix(f.h, f.a, 0, 1));
        logs.push_back(nilpotent_log(u.matrix()));
      }
      record(lie_closure(logs, f.dim()), n);
    }
  }
  return r;
}

/// The rot4 family: W-2 is Hom_+(k, k) for ε = -1, zero for an autodual
/// symmetric blend, and W-2 of δ_M for a non-autodual one.
inline CheckResult check_rot4(const CheckOptions& o) {
  CheckResult r{"thm2"};
  struct Case {
    int eps;
    Rational shift;
    std::size_t w2;
  };
  for (const Case& c : {Case{-1, 0, 1}, Case{1, 0, 0}, Case{1, 1, 1}}) {
    const auto s = rot4(c.eps, c.shift);
    const auto label = "eps=" + std::to_string(c.eps) + " shift=" + to_string(c.shift);
    r.expect(hom_dim(s.blend.n, s.blend.a) == 0, "Hom(N, A) != 0 for " + label);
    const auto rep = theorem2_verify(s.blend, s.datum, o.max_length);
    r.expect(rep.hypothesis_certified, "hypothesis not certified for " + label);
    r.expect(rep.w2_dim == c.w2, "dim W-2 = " + std::to_string(rep.w2_dim) + " for " + label);
    r.expect(rep.decomposition_holds, "decomposition fails for " + label);
    if (c.shift == 0) r.expect(rep.conclusion_holds, "conclusion fails for " + label);
    else r.expect(rep.w2_delta == c.w2 && rep.w2_autodual == 0, "W-2 is not W-2 of δ_M for " + label);
    ++r.instances;
  }
  return r;
}

using CheckFn = std::function<CheckResult(const CheckOptions&)>;

/// The named suite in report order.
inline const std::vector<std::pair<std::string, CheckFn>>& check_registry() {
  static const std::vector<std::pair<std::string, CheckFn>> reg{
      {"a1", check_action_constructions},         {"a2", check_induced_automorphism},         {"eq4", check_commutators},       {"lemma1", check_panachability},
      {"lemma2", check_torsor}, {"lemma3", check_gamma_symmetry}, {"lemma4", check_pairing_suite}, {"lemma5", check_ext_sign_rule},
      {"lemma6", check_w1_law}, {"lemma7", check_fullness}, {"thm1", check_autodualize},     {"thm2", check_rot4},
  };
  return reg;
}

}  // namespace panache
