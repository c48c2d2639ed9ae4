#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "panache/autodual.hpp"
#include "panache/monodromy.hpp"

namespace panache {

using Json = nlohmann::json;

// ---- emit ----------------------------------------------------------------

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_string(x));
  return out;
}

/// Per-generator blocks keyed by generator letter.
inline Json blocks_to_json(const GroupPresentation& g, const std::vector<Matrix>& blocks) {
  Json out = Json::object();
  for (std::size_t k = 0; k < blocks.size(); ++k) out[std::string(1, g.generators()[k])] = to_json(blocks[k]);
  return out;
}

inline Json to_json(const Representation& r) {
  return {{"dim", r.dim()}, {"images", blocks_to_json(r.presentation(), r.images())}};
}

inline Json to_json(const GroupPresentation& g) {
  Json gens = Json::array();
  for (char c : g.generators()) gens.push_back(std::string(1, c));
  return {{"generators", gens}, {"relators", g.relators()}};
}

/// Canonical text: sorted keys (nlohmann's default object), fixed indent, trailing newline.
inline std::string emit(const Json& j, int indent = 2) { return j.dump(indent < 0 ? -1 : indent) + "\n"; }

// ---- parse ---------------------------------------------------------------

/// "line L, column C" of a byte offset.
inline std::string line_column(const std::string& text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

namespace detail {

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw ParseError(where + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing field '" + key + "'");
  return *it;
}

inline std::string name_field(const Json& j, const std::string& key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) fail(where + "/" + key, "expected a name");
  return v.get<std::string>();
}

inline Rational rational_of(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(where, "expected a rational string \"p/q\"");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    fail(where, e.what());
  }
}

}  // namespace detail

/// Matrix of known shape; rows of strings "p/q" or "p" (integers also accepted).
inline Matrix parse_matrix(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) detail::fail(where, "expected a matrix (array of rows)");
  if (j.size() != rows) {
    detail::fail(where, "expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    const auto at = where + "/" + std::to_string(i);
    if (!row.is_array() || row.size() != cols) {
      detail::fail(at, "expected a row of " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = detail::rational_of(row[c], at + "/" + std::to_string(c));
  }
  return m;
}

inline Matrix parse_square(const Json& j, const std::string& where) {
  if (!j.is_array()) detail::fail(where, "expected a matrix (array of rows)");
  return parse_matrix(j, j.size(), j.size(), where);
}

inline std::vector<Matrix> parse_blocks(const Json& j, const GroupPresentation& g, std::size_t rows,
                                        std::size_t cols, const std::string& where) {
  if (!j.is_object()) detail::fail(where, "expected one matrix per generator");
  std::vector<Matrix> out;
  for (char c : g.generators()) {
    const std::string key(1, c);
    out.push_back(parse_matrix(detail::field(j, key, where), rows, cols, where + "/" + key));
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it.key().size() != 1 || std::count(g.generators().begin(), g.generators().end(), it.key()[0]) == 0) {
      detail::fail(where, "unknown generator '" + it.key() + "'");
    }
  }
  return out;
}

inline GroupPresentation parse_group(const Json& j, const std::string& where) {
  std::vector<char> gens;
  const auto& gj = detail::field(j, "generators", where);
  if (!gj.is_array()) detail::fail(where + "/generators", "expected an array");
  for (const auto& g : gj) {
    if (!g.is_string() || g.get<std::string>().size() != 1) detail::fail(where + "/generators", "expected letters");
    gens.push_back(g.get<std::string>()[0]);
  }
  std::vector<Word> rels;
  if (j.contains("relators")) {
    const auto& rj = j["relators"];
    if (!rj.is_array()) detail::fail(where + "/relators", "expected an array");
    for (const auto& r : rj) {
      if (!r.is_string()) detail::fail(where + "/relators", "expected words");
      rels.push_back(r.get<std::string>());
    }
  }
  try {
    return {std::move(gens), std::move(rels)};
  } catch (const ParseError& e) {
    detail::fail(where, e.what());
  }
}

struct ExtensionSpec {
  std::string sub, quot;
  Cocycle cocycle;
};

struct BlendSpec {
  std::string a, n, b;
  std::vector<Matrix> x, y;
  std::optional<std::vector<Matrix>> z;

  Cocycle m1(const Representation& ra, const Representation& rn) const { return {ra, rn, x}; }
  Cocycle m2(const Representation& rn, const Representation& rb) const { return {rn, rb, y}; }
};

struct DualitySpec {
  int epsilon = 1;
  std::string m1, m2;  // extension names
  Matrix phi, lambda;
};

/// A loaded instance file. Every name resolves and every object satisfies
/// the relators; blends may omit z.
struct Instance {
  GroupPresentation group;
  std::map<std::string, Representation> objects;
  std::map<std::string, ExtensionSpec> extensions;
  std::map<std::string, BlendSpec> blends;
  std::optional<DualitySpec> duality;

  const Representation& object(const std::string& name) const {
    auto it = objects.find(name);
    if (it == objects.end()) throw ParseError("unresolved object name '" + name + "'");
    return it->second;
  }

  const ExtensionSpec& extension(const std::string& name) const {
    auto it = extensions.find(name);
    if (it == extensions.end()) throw ParseError("unresolved extension name '" + name + "'");
    return it->second;
  }

  const BlendSpec& blend_spec(const std::string& name) const {
    auto it = blends.find(name);
    if (it == blends.end()) throw ParseError("unresolved blend name '" + name + "'");
    return it->second;
  }

  /// The blend with its z; throws if z is absent.
  BlendedExtension blend(const std::string& name) const {
    const auto& s = blend_spec(name);
    if (!s.z) throw ParseError("blend '" + name + "' has no z blocks");
    return {object(s.a), object(s.n), object(s.b), s.x, s.y, *s.z};
  }

  DualityDatum datum() const {
    if (!duality) throw ParseError("instance has no duality datum");
    return build_datum(extension(duality->m1).cocycle, extension(duality->m2).cocycle, duality->phi, duality->lambda,
                       duality->epsilon);
  }
};

inline Instance parse_instance(const std::string& text, const std::string& source = "<input>") {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is one past the offending character.
    throw ParseError(source + ": " + line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": invalid JSON");
  }
  Instance in;
  const std::string root = source + ":";
  in.group = parse_group(detail::field(j, "group", root), root + "/group");

  if (j.contains("objects")) {
    const auto& oj = j["objects"];
    if (!oj.is_object()) detail::fail(root + "/objects", "expected an object");
    for (auto it = oj.begin(); it != oj.end(); ++it) {
      const auto where = root + "/objects/" + it.key();
      const auto& dj = detail::field(*it, "dim", where);
      if (!dj.is_number_unsigned()) detail::fail(where + "/dim", "expected a non-negative integer");
      const std::size_t d = dj.get<std::size_t>();
      auto images = parse_blocks(detail::field(*it, "images", where), in.group, d, d, where + "/images");
      try {
        in.objects.emplace(it.key(), Representation::checked(in.group, d, std::move(images)));
      } catch (const Error& e) {
        detail::fail(where, e.what());
      }
    }
  }

  auto resolve = [&](const Json& jj, const std::string& key, const std::string& where) {
    const auto name = detail::name_field(jj, key, where);
    if (!in.objects.count(name)) detail::fail(where + "/" + key, "unresolved object name '" + name + "'");
    return name;
  };

  if (j.contains("extensions")) {
    const auto& ej = j["extensions"];
    if (!ej.is_object()) detail::fail(root + "/extensions", "expected an object");
    for (auto it = ej.begin(); it != ej.end(); ++it) {
      const auto where = root + "/extensions/" + it.key();
      ExtensionSpec s;
      s.sub = resolve(*it, "sub", where);
      s.quot = resolve(*it, "quot", where);
      const auto& sub = in.objects.at(s.sub);
      const auto& quot = in.objects.at(s.quot);
      s.cocycle = {sub, quot,
                   parse_blocks(detail::field(*it, "blocks", where), in.group, sub.dim(), quot.dim(),
                                where + "/blocks")};
      if (!s.cocycle.satisfies_relators()) detail::fail(where, "blocks do not satisfy the relators");
      in.extensions.emplace(it.key(), std::move(s));
    }
  }

  if (j.contains("blends")) {
    const auto& bj = j["blends"];
    if (!bj.is_object()) detail::fail(root + "/blends", "expected an object");
    for (auto it = bj.begin(); it != bj.end(); ++it) {
      const auto where = root + "/blends/" + it.key();
      BlendSpec s;
      s.a = resolve(*it, "a", where);
      s.n = resolve(*it, "n", where);
      s.b = resolve(*it, "b", where);
      const auto &ra = in.objects.at(s.a), &rn = in.objects.at(s.n), &rb = in.objects.at(s.b);
      s.x = parse_blocks(detail::field(*it, "x", where), in.group, ra.dim(), rn.dim(), where + "/x");
      s.y = parse_blocks(detail::field(*it, "y", where), in.group, rn.dim(), rb.dim(), where + "/y");
      if (!s.m1(ra, rn).satisfies_relators()) detail::fail(where + "/x", "x does not satisfy the relators");
      if (!s.m2(rn, rb).satisfies_relators()) detail::fail(where + "/y", "y does not satisfy the relators");
      if (it->contains("z")) {
        s.z = parse_blocks((*it)["z"], in.group, ra.dim(), rb.dim(), where + "/z");
        const BlendedExtension m{ra, rn, rb, s.x, s.y, *s.z};
        if (!m.satisfies_relators()) detail::fail(where + "/z", "blend does not satisfy the relators");
      }
      in.blends.emplace(it.key(), std::move(s));
    }
  }

  if (j.contains("duality") && !j["duality"].is_null()) {
    const auto& dj = j["duality"];
    const auto where = root + "/duality";
    DualitySpec d;
    const auto& ej = detail::field(dj, "epsilon", where);
    if (!ej.is_number_integer() || (ej.get<int>() != 1 && ej.get<int>() != -1)) {
      detail::fail(where + "/epsilon", "expected +1 or -1");
    }
    d.epsilon = ej.get<int>();
    for (const auto* key : {"m1", "m2"}) {
      const auto name = detail::name_field(dj, key, where);
      if (!in.extensions.count(name)) detail::fail(where + "/" + key, "unresolved extension name '" + name + "'");
      (std::string(key) == "m1" ? d.m1 : d.m2) = name;
    }
    d.phi = parse_square(detail::field(dj, "phi", where), where + "/phi");
    d.lambda = parse_square(detail::field(dj, "lambda", where), where + "/lambda");
    in.duality = std::move(d);
  }
  return in;
}

inline Instance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(path + ": cannot open");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_instance(ss.str(), path);
}

// ---- instance pieces back to JSON ----------------------------------------

inline Json blend_to_json(const BlendedExtension& m, const std::string& a, const std::string& n, const std::string& b) {
  const auto& g = m.a.presentation();
  return {{"a", a},
          {"n", n},
          {"b", b},
          {"x", blocks_to_json(g, m.x)},
          {"y", blocks_to_json(g, m.y)},
          {"z", blocks_to_json(g, m.z)}};
}

inline Json class_to_json(const ExtClass& c) {
  const auto rep = c.representative();
  return {{"coordinates", to_json(c.coordinates())},
          {"dim", c.space()->dim()},
          {"representative", blocks_to_json(rep.sub.presentation(), rep.blocks)},
          {"zero", c.is_zero()}};
}

inline Json to_json(const FullnessReport& r) {
  return {{"derived_dim", r.derived_dim},         {"equal", r.equal},       {"g_dim", r.g_dim},
          {"induction_dims", r.induction_dims},   {"induction_holds", r.induction_holds},
          {"n_dim", r.n_dim},                     {"quotient_full", r.quotient_full}};
}

inline Json to_json(const MonodromyReport& r) {
  return {{"conclusion_holds", r.conclusion_holds},
          {"decomposition",
           {{"corner_additivity", r.corner_additivity},
            {"delta_zero", r.delta_zero},
            {"direct_sum", r.direct_sum},
            {"holds", r.decomposition_holds},
            {"w2_autodual", r.w2_autodual},
            {"w2_delta", r.w2_delta},
            {"words_autodual", r.words_autodual},
            {"words_delta", r.words_delta}}},
          {"depth", r.depth},
          {"hom_minus_eps", r.hom_minus_eps},
          {"hypothesis_certified", r.hypothesis_certified},
          {"fullness", to_json(r.fullness)},
          {"logs_in_parabolic", r.logs_in_parabolic},
          {"w1_dim", r.w1_dim},
          {"w2_dim", r.w2_dim},
          {"w2_expected", r.w2_expected},
          {"words", r.words_m}};
}

}  // namespace panache
