#ifndef QTILT_ALGFILE_HPP
#define QTILT_ALGFILE_HPP

#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>

#include "qtilt/module.hpp"

namespace qtilt {

struct AlgebraFileError : std::runtime_error {
  explicit AlgebraFileError(const std::string& m) : std::runtime_error("AlgebraFileError: " + m) {}
};

// Parsed algebra definition file. The grammar is a strict JSON object:
//   name: string
//   field: "Q" or "F<p>" with p prime
//   vertices: [string, ...]
//   arrows: [{label, src, tgt}, ...]
//   relations: [[arrow label, ...], ...]       (monomial zero-relations only)
//   expect: optional {dim, indecomposables}    (asserted when present)
// Unknown keys are rejected.
struct AlgebraFile {
  std::string name;
  std::string field_tag;
  int64_t prime = 0;  // 0 for the rationals
  Quiver quiver;
  std::vector<std::vector<std::string>> relations;
  std::optional<int> expect_dim;
  std::optional<int> expect_indecomposables;
};

inline AlgebraFile parse_algebra_json(const nlohmann::json& j) {
  AlgebraFile out;
  static const std::set<std::string> allowed{"name", "field", "vertices", "arrows", "relations", "expect"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw AlgebraFileError("unknown key '" + it.key() + "'");
  if (!j.contains("name") || !j["name"].is_string()) throw AlgebraFileError("missing string 'name'");
  out.name = j["name"].get<std::string>();
  if (!j.contains("field") || !j["field"].is_string()) throw AlgebraFileError("missing string 'field'");
  out.field_tag = j["field"].get<std::string>();
  if (out.field_tag == "Q") {
    out.prime = 0;
  } else if (out.field_tag.size() > 1 && out.field_tag[0] == 'F') {
    try {
      out.prime = std::stoll(out.field_tag.substr(1));
    } catch (...) {
      throw AlgebraFileError("field tag must be 'Q' or 'F<p>'");
    }
    if (!is_prime_int(out.prime)) throw AlgebraFileError("field characteristic must be prime");
  } else {
    throw AlgebraFileError("field tag must be 'Q' or 'F<p>'");
  }
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw AlgebraFileError("missing 'vertices' array");
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw AlgebraFileError("vertices must be strings");
    out.quiver.vertices.push_back(v.get<std::string>());
  }
  if (!j.contains("arrows") || !j["arrows"].is_array()) throw AlgebraFileError("missing 'arrows' array");
  for (const auto& a : j["arrows"]) {
    static const std::set<std::string> akeys{"label", "src", "tgt"};
    for (auto it = a.begin(); it != a.end(); ++it)
      if (!akeys.count(it.key())) throw AlgebraFileError("unknown arrow key '" + it.key() + "'");
    if (!a.contains("label") || !a.contains("src") || !a.contains("tgt"))
      throw AlgebraFileError("arrows need label/src/tgt");
    Arrow ar;
    ar.label = a["label"].get<std::string>();
    ar.src = out.quiver.vertex_index(a["src"].get<std::string>());
    ar.tgt = out.quiver.vertex_index(a["tgt"].get<std::string>());
    out.quiver.arrows.push_back(ar);
  }
  if (j.contains("relations")) {
    if (!j["relations"].is_array()) throw AlgebraFileError("'relations' must be an array");
    for (const auto& r : j["relations"]) {
      if (!r.is_array()) throw AlgebraFileError(
          "relations must be arrays of arrow labels (monomial zero-relations); linear combinations are not supported");
      std::vector<std::string> word;
      for (const auto& w : r) {
        if (!w.is_string())
          throw AlgebraFileError("relation entries must be arrow labels; linear combinations are not supported");
        std::string lbl = w.get<std::string>();
        bool known = false;
        for (const auto& a : out.quiver.arrows)
          if (a.label == lbl) known = true;
        if (!known)
          throw AlgebraFileError("relation entry '" + lbl +
                                 "' is not an arrow label; only monomial zero-relations are supported");
        word.push_back(lbl);
      }
      if (word.size() < 2) throw AlgebraFileError("relations must have length at least 2");
      out.relations.push_back(word);
    }
  }
  if (j.contains("expect")) {
    const auto& e = j["expect"];
    static const std::set<std::string> ekeys{"dim", "indecomposables"};
    for (auto it = e.begin(); it != e.end(); ++it)
      if (!ekeys.count(it.key())) throw AlgebraFileError("unknown expect key '" + it.key() + "'");
    if (e.contains("dim")) out.expect_dim = e["dim"].get<int>();
    if (e.contains("indecomposables")) out.expect_indecomposables = e["indecomposables"].get<int>();
  }
  return out;
}

inline AlgebraFile load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AlgebraFileError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw AlgebraFileError(std::string("parse failure: ") + e.what());
  }
  return parse_algebra_json(j);
}

// Built-in corpus (the named examples, embedded so the acceptance runs need
// no external files).
inline AlgebraFile builtin_algebra(const std::string& name) {
  nlohmann::json j;
  if (name == "a1") {
    j = {{"name", "a1"},
         {"field", "Q"},
         {"vertices", {"a", "b"}},
         {"arrows",
          {{{"label", "alpha"}, {"src", "a"}, {"tgt", "b"}}, {{"label", "beta"}, {"src", "b"}, {"tgt", "a"}}}},
         {"relations", {{"alpha", "beta", "alpha", "beta"}, {"beta", "alpha", "beta", "alpha"}}},
         {"expect", {{"dim", 8}, {"indecomposables", 8}}}};
  } else if (name == "a2") {
    j = {{"name", "a2"},
         {"field", "Q"},
         {"vertices", {"a", "b"}},
         {"arrows",
          {{{"label", "alpha"}, {"src", "a"}, {"tgt", "b"}}, {{"label", "beta"}, {"src", "b"}, {"tgt", "a"}}}},
         {"relations", {{"alpha", "beta", "alpha"}, {"beta", "alpha", "beta"}}},
         {"expect", {{"dim", 6}, {"indecomposables", 6}}}};
  } else if (name == "a3") {
    j = {{"name", "a3"},
         {"field", "Q"},
         {"vertices", {"a", "b", "c"}},
         {"arrows",
          {{{"label", "ab"}, {"src", "a"}, {"tgt", "b"}}, {{"label", "bc"}, {"src", "b"}, {"tgt", "c"}}}},
         {"relations", nlohmann::json::array()},
         {"expect", {{"dim", 6}, {"indecomposables", 6}}}};
  } else {
    throw AlgebraFileError("no built-in algebra named " + name);
  }
  return parse_algebra_json(j);
}

template <class F>
std::shared_ptr<AlgebraHandle<F>> realize_algebra(const F& field, const AlgebraFile& af) {
  return make_handle(make_algebra(field, af.quiver, af.relations));
}

}  // namespace qtilt

#endif
