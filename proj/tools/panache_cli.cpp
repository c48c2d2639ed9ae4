#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "panache/checks.hpp"
#include "panache/io.hpp"

using namespace panache;

namespace {

enum Exit { kOk = 0, kInput = 1, kNegative = 2 };

struct Options {
  std::string instance;
  std::string name;
  std::string other;
  std::optional<int> epsilon;
  std::size_t max_length = 8;
  int indent = 2;
  std::size_t instances = 50;
};

struct Outcome {
  Json body;
  int code = kOk;
};

std::string pick_blend(const Instance& in, const std::string& name) {
  if (!name.empty()) return name;
  if (in.blends.size() != 1) throw ParseError("--name is required when the instance has " +
                                              std::to_string(in.blends.size()) + " blends");
  return in.blends.begin()->first;
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw ParseError(std::string(flag) + " is required");
  return value;
}

DualityDatum datum_of(const Instance& in, const Options& o) {
  if (in.duality && o.epsilon && *o.epsilon != in.duality->epsilon) {
    throw ParseError("--epsilon disagrees with the instance's duality datum");
  }
  return in.datum();
}

Json rigidity_json(const RigidityReport& r) {
  return {{"hom_b_n", r.hom_b_n}, {"hom_n_a", r.hom_n_a}, {"rigid", r.rigid()}};
}

Outcome cmd_validate(const Instance& in) {
  Json objects = Json::object(), extensions = Json::object(), blends = Json::object();
  for (const auto& [name, r] : in.objects) objects[name] = {{"dim", r.dim()}};
  for (const auto& [name, e] : in.extensions) {
    const auto sp = ext_space(e.cocycle.quot, e.cocycle.sub);
    extensions[name] = {{"class", to_json(sp->class_of(e.cocycle).coordinates())},
                        {"ext_dim", sp->dim()},
                        {"quot", e.quot},
                        {"sub", e.sub}};
  }
  for (const auto& [name, s] : in.blends) {
    const auto &a = in.object(s.a), &n = in.object(s.n), &b = in.object(s.b);
    Json j{{"complete", s.z.has_value()}, {"rigidity", rigidity_json(rigidity(a, n, b))}};
    if (!s.z) j["panachable"] = solve_blend(s.m1(a, n), s.m2(n, b)).has_value();
    blends[name] = j;
  }
  Json out{{"blends", blends},
           {"extensions", extensions},
           {"group", to_json(in.group)},
           {"objects", objects},
           {"valid", true}};
  if (in.duality) {
    Json d{{"epsilon", in.duality->epsilon}, {"m1", in.duality->m1}, {"m2", in.duality->m2}};
    try {
      in.datum();
      d["compatible"] = true;
    } catch (const Error& e) {
      d["compatible"] = false;
      d["reason"] = e.what();
    }
    out["duality"] = d;
  }
  return {out};
}

Outcome cmd_hom(const Instance& in, const Options& o) {
  const auto& x = in.object(need(o.name, "--name"));
  const auto& y = in.object(need(o.other, "--other"));
  Json basis = Json::array();
  for (const auto& f : hom_space(x, y)) basis.push_back(to_json(f.matrix()));
  return {{{"basis", basis}, {"dim", basis.size()}, {"source", o.name}, {"target", o.other}}};
}

Outcome cmd_ext(const Instance& in, const Options& o) {
  const auto& b = in.object(need(o.name, "--name"));
  Json basis = Json::array();
  Json out{{"quot", o.name}};
  if (o.other.empty()) {
    if (!o.epsilon) throw ParseError("ext needs --other, or --epsilon for Ext_eps(B, B^)");
    require_sign(*o.epsilon);
    const auto sp = ext_space(b, dual(b));
    const auto split = eps_split(sp);
    for (const auto& c : eps_part(split, *o.epsilon)) basis.push_back(blocks_to_json(in.group, c.representative().blocks));
    out["epsilon"] = *o.epsilon;
    out["sub"] = "dual(" + o.name + ")";
    out["ext_dim"] = sp->dim();
  } else {
    const auto sp = ext_space(b, in.object(o.other));
    for (std::size_t i = 0; i < sp->dim(); ++i) {
      basis.push_back(blocks_to_json(in.group, sp->basis_class(i).representative().blocks));
    }
    out["sub"] = o.other;
  }
  out["basis"] = basis;
  out["dim"] = basis.size();
  return {out};
}

Outcome cmd_blend(const Instance& in, const Options& o) {
  const auto name = pick_blend(in, o.name);
  const auto& s = in.blend_spec(name);
  const auto &a = in.object(s.a), &n = in.object(s.n), &b = in.object(s.b);
  const auto m = solve_blend(s.m1(a, n), s.m2(n, b));
  Json out{{"name", name}, {"panachable", m.has_value()}, {"rigidity", rigidity_json(rigidity(a, n, b))}};
  if (!m) return {out, kNegative};
  out["blend"] = blend_to_json(*m, s.a, s.n, s.b);
  return {out};
}

Outcome cmd_act(const Instance& in, const Options& o) {
  const auto name = pick_blend(in, o.name);
  const auto m = in.blend(name);
  const auto& e = in.extension(need(o.other, "--other"));
  const auto& s = in.blend_spec(name);
  if (!(e.cocycle.sub == m.a) || !(e.cocycle.quot == m.b)) {
    throw ParseError("extension '" + o.other + "' is not an extension of " + s.b + " by " + s.a);
  }
  const auto u = ext_space(m.b, m.a)->class_of(e.cocycle);
  return {{{"blend", blend_to_json(torsor_act(m, u), s.a, s.n, s.b)}, {"class", class_to_json(u)}, {"name", name}}};
}

Outcome cmd_diff(const Instance& in, const Options& o) {
  const auto name = need(o.name, "--name");
  const auto m = in.blend(name), p = in.blend(need(o.other, "--other"));
  if (!same_faces(m, p)) throw ParseError("blends '" + name + "' and '" + o.other + "' have different faces");
  const auto d = torsor_difference(m, p, ext_space(m.b, m.a));
  return {{{"difference", class_to_json(d)}, {"isomorphic", d.is_zero()}}};
}

Outcome cmd_gamma(const Instance& in, const Options& o) {
  const auto name = pick_blend(in, o.name);
  const auto m = in.blend(name);
  const auto d = datum_of(in, o);
  const auto g = gamma_obstruction(m, d);
  Json out{{"autodual", g.is_zero()}, {"class", class_to_json(g)}, {"epsilon", d.epsilon}, {"name", name}};
  out["gamma"] = g.is_zero() ? Json("0") : blocks_to_json(in.group, g.representative().blocks);
  return {out};
}

Outcome cmd_autodualize(const Instance& in, const Options& o) {
  const auto name = pick_blend(in, o.name);
  const auto m = in.blend(name);
  const auto d = datum_of(in, o);
  const auto r = autodualize(m, d);
  const auto& s = in.blend_spec(name);
  return {{{"blend", blend_to_json(r.blend, s.a, s.n, s.b)},
           {"delta", class_to_json(r.delta)},
           {"delta_prime", class_to_json(r.delta_prime)},
           {"epsilon", d.epsilon},
           {"gamma_after", gamma_obstruction(r.blend, d).is_zero() ? "0" : "nonzero"},
           {"name", name}}};
}

Outcome cmd_isoaut(const Instance& in, const Options& o) {
  const auto name = pick_blend(in, o.name);
  const auto m = in.blend(name);
  const auto d = datum_of(in, o);
  if (!gamma_obstruction(m, d).is_zero()) {
    return {{{"autodual", false}, {"name", name}}, kNegative};
  }
  const auto p = isoaut_find(m, d);
  const auto rep = check_pairing(p);
  Json dirs = Json::array();
  for (const auto& w : isoaut_directions(m, d)) dirs.push_back(to_json(w));
  return {{{"autodual", true},
           {"checks",
            {{"a_isotropic", rep.a_isotropic},
             {"a_perp_is_m1", rep.a_perp_is_m1},
             {"eps_symmetric", rep.eps_symmetric},
             {"invariant", rep.invariant},
             {"nondegenerate", rep.nondegenerate}}},
           {"directions", dirs},
           {"epsilon", d.epsilon},
           {"name", name},
           {"pairing", to_json(p.matrix)}},
          rep.ok() ? kOk : kNegative};
}

Outcome cmd_frame(const Instance& in, const Options& o) {
  const auto name = pick_blend(in, o.name);
  const auto m = in.blend(name);
  const auto d = datum_of(in, o);
  if (!gamma_obstruction(m, d).is_zero()) return {{{"autodual", false}, {"name", name}}, kNegative};
  const auto f = standard_frame(isoaut_find(m, d));
  Json levels = Json::object();
  for (std::size_t g = 0; g < in.group.generator_count(); ++g) {
    levels[std::string(1, in.group.generators()[g])] = to_string(filtration_level(f, m.image(g)));
  }
  return {{{"a", f.a},
           {"autodual", true},
           {"change_of_basis", to_json(f.change_of_basis)},
           {"epsilon", f.epsilon},
           {"h", f.h},
           {"j_h", to_json(f.j_h)},
           {"levels", levels},
           {"name", name},
           {"standard_form", to_json(f.standard_form())}}};
}

Outcome cmd_monodromy(const Instance& in, const Options& o) {
  const auto name = pick_blend(in, o.name);
  const auto m = in.blend(name);
  const auto d = datum_of(in, o);
  const auto r = theorem2_verify(m, d, o.max_length);
  Json out = to_json(r);
  out["name"] = name;
  out["epsilon"] = d.epsilon;
  const bool ok = r.hypothesis_certified && r.decomposition_holds && (!r.delta_zero || r.conclusion_holds);
  return {out, ok ? kOk : kNegative};
}

std::uint64_t seed_from_env() {
  const char* s = std::getenv("PANACHE_SEED");
  if (!s || !*s) return 1;
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("PANACHE_SEED is not an unsigned integer: '") + s + "'");
  }
}

Outcome cmd_verify(const Options& o) {
  CheckOptions co;
  co.seed = seed_from_env();
  co.instances = o.instances;
  co.max_length = o.max_length;
  if (o.epsilon) {
    require_sign(*o.epsilon);
    co.signs = {*o.epsilon};
  }
  Json checks = Json::object();
  bool all = true;
  for (const auto& [name, fn] : check_registry()) {
    const auto r = fn(co);
    Json j{{"instances", r.instances}, {"pass", r.pass}};
    if (!r.pass) j["failure"] = r.failure;
    checks[name] = j;
    all = all && r.pass;
  }
  return {{{"all_pass", all},
           {"checks", checks},
           {"instances", co.instances},
           {"max_length", co.max_length},
           {"seed", co.seed},
           {"signs", co.signs}},
          all ? kOk : kNegative};
}

// Extra checks on the blends of an instance file, appended to verify.
Json verify_instance(const Instance& in) {
  Json out = Json::object();
  std::optional<DualityDatum> d;
  if (in.duality) {
    try {
      d = in.datum();
    } catch (const Error&) {
    }
  }
  for (const auto& [name, s] : in.blends) {
    if (!s.z) continue;
    const auto m = in.blend(name);
    Json j{{"valid", m.satisfies_relators()}};
    if (d) {
      try {
        require_datum_for(m, *d);
        const auto g = gamma_obstruction(m, *d);
        j["dual_symmetry"] = dual_class(g, g.space()) == Rational(-d->epsilon) * g;
        j["autodualizes"] = gamma_obstruction(autodualize(m, *d).blend, *d).is_zero();
      } catch (const Error&) {
      }
    }
    out[name] = j;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with self-dual blended extensions"};
  app.fallthrough();
  Options o;
  int eps = 0;
  app.add_option("--instance", o.instance, "instance file (JSON)");
  app.add_option("--name", o.name, "object, extension or blend name");
  app.add_option("--other", o.other, "second name (hom, ext, act, diff)");
  auto* eps_opt = app.add_option("--epsilon", eps, "sign ε, +1 or -1");
  app.add_option("--max-length", o.max_length, "word length for monodromy")->check(CLI::Range(0, 16));
  app.add_option("--json-indent", o.indent, "indent of the JSON output, -1 for one line");
  app.add_option("--instances", o.instances, "randomized instances per verify suite")->check(CLI::Range(1, 100000));
  const char* commands[][2] = {{"validate", "load and summarize an instance"},
                               {"hom", "Hom(--name, --other)"},
                               {"ext", "Ext^1(--name, --other), or Ext_eps(--name, dual) with --epsilon"},
                               {"blend", "solve for z from the faces of a blend"},
                               {"act", "act on a blend by the class of an extension"},
                               {"diff", "difference class of two blends"},
                               {"gamma", "obstruction to autoduality"},
                               {"autodualize", "correct a blend to an autodual one"},
                               {"isoaut", "invariant ε-symmetric pairing of an autodual blend"},
                               {"frame", "standard basis adapted to A ⊂ M1 ⊂ M"},
                               {"monodromy", "unipotent radical report"},
                               {"verify", "named property suite"}};
  for (const auto& c : commands) app.add_subcommand(c[0], c[1]);
  app.require_subcommand(1);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }
  if (eps_opt->count()) o.epsilon = eps;
  const std::string cmd = app.get_subcommands().front()->get_name();

  Outcome out;
  try {
    if (o.epsilon && *o.epsilon != 1 && *o.epsilon != -1) throw ParseError("--epsilon must be +1 or -1");
    if (cmd == "verify") {
      out = cmd_verify(o);
      if (!o.instance.empty()) out.body["instance"] = verify_instance(load_instance(o.instance));
    } else {
      const auto in = load_instance(need(o.instance, "--instance"));
      if (cmd == "validate") out = cmd_validate(in);
      else if (cmd == "hom") out = cmd_hom(in, o);
      else if (cmd == "ext") out = cmd_ext(in, o);
      else if (cmd == "blend") out = cmd_blend(in, o);
      else if (cmd == "act") out = cmd_act(in, o);
      else if (cmd == "diff") out = cmd_diff(in, o);
      else if (cmd == "gamma") out = cmd_gamma(in, o);
      else if (cmd == "autodualize") out = cmd_autodualize(in, o);
      else if (cmd == "isoaut") out = cmd_isoaut(in, o);
      else if (cmd == "frame") out = cmd_frame(in, o);
      else out = cmd_monodromy(in, o);
    }
  } catch (const ParseError& e) {
    out = {{{"error", e.what()}, {"kind", "input"}}, kInput};
  } catch (const DimensionError& e) {
    out = {{{"error", e.what()}, {"kind", "input"}}, kInput};
  } catch (const MismatchError& e) {
    out = {{{"error", e.what()}, {"kind", "input"}}, kInput};
  } catch (const Error& e) {
    out = {{{"error", e.what()}, {"kind", "negative"}}, kNegative};
  }
  std::cout << emit(out.body, o.indent);
  if (out.body.contains("error")) std::cerr << "panache " << cmd << ": " << out.body["error"].get<std::string>() << "\n";
  return out.code;
}
