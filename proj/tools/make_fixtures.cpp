// Writes the fixture corpus: make_fixtures <dir>
#include <fstream>
#include <iostream>
#include <string>

#include "panache/io.hpp"
#include "panache/samples.hpp"

using namespace panache;

namespace {

Json objects_json(std::initializer_list<std::pair<std::string, Representation>> objs) {
  Json out = Json::object();
  for (const auto& [name, r] : objs) out[name] = to_json(r);
  return out;
}

Json extension_json(const Cocycle& c, const std::string& sub, const std::string& quot) {
  return {{"blocks", blocks_to_json(c.sub.presentation(), c.blocks)}, {"quot", quot}, {"sub", sub}};
}

Json faces_only(const BlendedExtension& m) {
  Json j = blend_to_json(m, "A", "N", "B");
  j.erase("z");
  return j;
}

Json free_group() {
  Sampler rng(2024);
  const auto m = rng.blend(1, 2, 1);
  const auto sp = ext_space(m.b, m.a);
  auto u = sp->basis_class(0).representative();
  return {{"group", to_json(m.a.presentation())},
          {"objects", objects_json({{"A", m.a}, {"N", m.n}, {"B", m.b}})},
          {"extensions", {{"U", extension_json(u, "A", "B")}}},
          {"blends",
           {{"M", faces_only(m)},
            {"M0", blend_to_json(*solve_blend(m.m1(), m.m2()), "A", "N", "B")},
            {"M1", blend_to_json(torsor_act(*solve_blend(m.m1(), m.m2()), sp->basis_class(0)), "A", "N", "B")}}}};
}

Json klein() {
  const GroupPresentation k({'a', 'b'}, {"abAb"});
  const Representation a(k, 1, {Matrix{{1}}, Matrix{{1}}});
  const Representation n(k, 1, {Matrix{{-1}}, Matrix{{1}}});
  const auto x = ext_space(n, a)->basis_class(0).representative();
  const auto y = ext_space(a, n)->basis_class(0).representative();
  const auto m = *solve_blend(x, y);
  return {{"group", to_json(k)},
          {"objects", objects_json({{"A", a}, {"N", n}, {"B", a}})},
          {"blends", {{"M", faces_only(m)}}}};
}

Json heisenberg() {
  const GroupPresentation z2({'a', 'b'}, {"abAB"});
  const auto one = Representation::trivial(z2);
  const auto& g = z2;
  return {{"group", to_json(z2)},
          {"objects", objects_json({{"A", one}, {"N", one}, {"B", one}})},
          {"blends",
           {{"M",
             {{"a", "A"},
              {"n", "N"},
              {"b", "B"},
              {"x", blocks_to_json(g, {Matrix{{1}}, Matrix{{0}}})},
              {"y", blocks_to_json(g, {Matrix{{0}}, Matrix{{1}}})}}}}}};
}

Json rot4_instance(int epsilon, const Rational& shift) {
  const auto s = rot4(epsilon, shift);
  const auto& m = s.blend;
  return {{"group", to_json(m.a.presentation())},
          {"objects", objects_json({{"A", m.a}, {"N", m.n}, {"B", m.b}})},
          {"extensions", {{"M1", extension_json(s.datum.m1, "A", "N")}, {"M2", extension_json(s.datum.m2, "N", "B")}}},
          {"blends", {{"M", blend_to_json(m, "A", "N", "B")}}},
          {"duality",
           {{"epsilon", epsilon},
            {"lambda", to_json(s.datum.lam.matrix())},
            {"m1", "M1"},
            {"m2", "M2"},
            {"phi", to_json(s.datum.phi.matrix())}}}};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  const std::pair<const char*, Json> files[] = {
      {"free-group.json", free_group()},
      {"klein.json", klein()},
      {"z2-heisenberg.json", heisenberg()},
      {"rot4-antisym.json", rot4_instance(-1, 0)},
      {"rot4-sym-autodual.json", rot4_instance(1, 0)},
      {"rot4-sym-nonautodual.json", rot4_instance(1, 1)},
  };
  for (const auto& [name, j] : files) {
    std::ofstream(dir + "/" + name) << emit(j, 2);
  }
  return 0;
}
