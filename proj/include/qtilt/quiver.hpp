#ifndef QTILT_QUIVER_HPP
#define QTILT_QUIVER_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtilt/mat.hpp"

namespace qtilt {

struct InvalidQuiver : std::runtime_error {
  explicit InvalidQuiver(const std::string& m) : std::runtime_error("InvalidQuiver: " + m) {}
};
struct InfiniteDimensional : std::runtime_error {
  explicit InfiniteDimensional(const std::string& m) : std::runtime_error("InfiniteDimensional: " + m) {}
};

struct Arrow {
  std::string label;
  int src = 0, tgt = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  int vertex_index(const std::string& name) const {
    for (size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i] == name) return static_cast<int>(i);
    throw InvalidQuiver("unknown vertex " + name);
  }
  int arrow_index(const std::string& label) const {
    for (size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].label == label) return static_cast<int>(i);
    throw InvalidQuiver("unknown arrow " + label);
  }

  void validate() const {
    std::set<std::string> vs(vertices.begin(), vertices.end());
    if (vs.size() != vertices.size()) throw InvalidQuiver("duplicate vertex labels");
    std::set<std::string> as;
    for (const Arrow& ar : arrows) {
      if (!as.insert(ar.label).second) throw InvalidQuiver("duplicate arrow label " + ar.label);
      if (ar.src < 0 || ar.src >= static_cast<int>(vertices.size()) ||
          ar.tgt < 0 || ar.tgt >= static_cast<int>(vertices.size()))
        throw InvalidQuiver("arrow endpoint out of range");
      if (ar.src == ar.tgt) throw InvalidQuiver("loops are not supported (arrow " + ar.label + ")");
    }
  }
};

// A path is a composable arrow sequence read left to right: {i, j} means
// "first arrow i, then arrow j". Length 0 paths are vertex idempotents.
struct Path {
  int source = 0, target = 0;
  std::vector<int> arrows;  // arrow indices

  int length() const { return static_cast<int>(arrows.size()); }
  bool operator==(const Path& o) const {
    return source == o.source && target == o.target && arrows == o.arrows;
  }
  bool operator<(const Path& o) const {
    if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
    if (source != o.source) return source < o.source;
    return arrows < o.arrows;
  }
};

// Bound quiver algebra kQ/I with monomial relations. The basis is the set of
// paths containing no relation as a contiguous subpath, enumerated breadth
// first by length and then lexicographically by arrow label.
template <class F>
struct Algebra {
  F field;
  Quiver quiver;
  std::vector<Path> relations;
  std::vector<Path> basis;                  // computed
  std::map<std::pair<int, std::vector<int>>, int> basis_ix;  // (source, arrows) -> basis position

  int num_vertices() const { return static_cast<int>(quiver.vertices.size()); }
  int num_arrows() const { return static_cast<int>(quiver.arrows.size()); }
  int dim() const { return static_cast<int>(basis.size()); }

  std::string path_name(const Path& p) const {
    if (p.length() == 0) return "e_" + quiver.vertices[p.source];
    std::string s;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
      if (i) s += "*";
      s += quiver.arrows[p.arrows[i]].label;
    }
    return s;
  }

  bool contains_relation(const std::vector<int>& seq) const {
    for (const Path& r : relations) {
      size_t rl = r.arrows.size();
      if (rl > seq.size()) continue;
      for (size_t off = 0; off + rl <= seq.size(); ++off) {
        bool hit = true;
        for (size_t k = 0; k < rl; ++k)
          if (seq[off + k] != r.arrows[k]) { hit = false; break; }
        if (hit) return true;
      }
    }
    return false;
  }

  std::optional<Path> make_path(const std::vector<int>& arrow_seq) const {
    if (arrow_seq.empty()) throw InvalidQuiver("make_path needs arrows; use vertex_path");
    Path p;
    p.source = quiver.arrows[arrow_seq[0]].src;
    int cur = p.source;
    for (int ai : arrow_seq) {
      if (quiver.arrows[ai].src != cur) return std::nullopt;
      cur = quiver.arrows[ai].tgt;
    }
    p.target = cur;
    p.arrows = arrow_seq;
    return p;
  }

  Path vertex_path(int v) const { return Path{v, v, {}}; }

  // Concatenation p then q, Zero (nullopt) if not composable or hits a relation.
  std::optional<Path> compose(const Path& p, const Path& q) const {
    if (p.target != q.source) return std::nullopt;
    std::vector<int> seq = p.arrows;
    seq.insert(seq.end(), q.arrows.begin(), q.arrows.end());
    if (contains_relation(seq)) return std::nullopt;
    Path r;
    r.source = p.source;
    r.target = q.target;
    r.arrows = std::move(seq);
    return r;
  }
};

template <class F>
void compute_path_basis(Algebra<F>& alg) {
  alg.quiver.validate();
  for (const Path& r : alg.relations)
    if (r.length() < 2) throw InvalidQuiver("relations must have length >= 2");
  int max_rel = 2;
  for (const Path& r : alg.relations) max_rel = std::max(max_rel, r.length());
  const int bound = alg.num_vertices() * max_rel;

  // Arrow order for the lexicographic tiebreak: by label.
  std::vector<int> arrow_order(alg.num_arrows());
  for (int i = 0; i < alg.num_arrows(); ++i) arrow_order[i] = i;
  std::sort(arrow_order.begin(), arrow_order.end(), [&](int x, int y) {
    return alg.quiver.arrows[x].label < alg.quiver.arrows[y].label;
  });

  alg.basis.clear();
  alg.basis_ix.clear();
  std::vector<Path> frontier;
  for (int v = 0; v < alg.num_vertices(); ++v) frontier.push_back(alg.vertex_path(v));
  int len = 0;
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end(), [&](const Path& x, const Path& y) {
      if (x.source != y.source) return x.source < y.source;
      // lexicographic by arrow label sequence
      for (size_t k = 0; k < std::min(x.arrows.size(), y.arrows.size()); ++k) {
        const std::string& lx = alg.quiver.arrows[x.arrows[k]].label;
        const std::string& ly = alg.quiver.arrows[y.arrows[k]].label;
        if (lx != ly) return lx < ly;
      }
      return x.arrows.size() < y.arrows.size();
    });
    for (const Path& p : frontier) {
      alg.basis.push_back(p);
      alg.basis_ix[{p.source, p.arrows}] = static_cast<int>(alg.basis.size()) - 1;
    }
    std::vector<Path> next;
    for (const Path& p : frontier)
      for (int ai : arrow_order) {
        const Arrow& ar = alg.quiver.arrows[ai];
        if (ar.src != p.target) continue;
        std::vector<int> seq = p.arrows;
        seq.push_back(ai);
        if (alg.contains_relation(seq)) continue;
        Path q;
        q.source = p.source;
        q.target = ar.tgt;
        q.arrows = std::move(seq);
        next.push_back(q);
      }
    ++len;
    if (!next.empty() && len > bound)
      throw InfiniteDimensional("relation-free path of length > " + std::to_string(bound) +
                                "; the algebra is infinite dimensional");
    frontier = std::move(next);
  }
}

template <class F>
Algebra<F> make_algebra(const F& field, Quiver quiver, const std::vector<std::vector<std::string>>& relation_words) {
  Algebra<F> alg;
  alg.field = field;
  alg.quiver = std::move(quiver);
  alg.quiver.validate();
  for (const auto& word : relation_words) {
    std::vector<int> seq;
    for (const std::string& lbl : word) seq.push_back(alg.quiver.arrow_index(lbl));
    auto p = alg.make_path(seq);
    if (!p) throw InvalidQuiver("relation word is not a composable path");
    alg.relations.push_back(*p);
  }
  compute_path_basis(alg);
  return alg;
}

// Opposite algebra: arrows reversed, relation words reversed.
template <class F>
Algebra<F> opposite_algebra(const Algebra<F>& alg) {
  Quiver q;
  q.vertices = alg.quiver.vertices;
  for (const Arrow& a : alg.quiver.arrows) q.arrows.push_back({a.label, a.tgt, a.src});
  std::vector<std::vector<std::string>> rel;
  for (const Path& r : alg.relations) {
    std::vector<std::string> word;
    for (auto it = r.arrows.rbegin(); it != r.arrows.rend(); ++it)
      word.push_back(alg.quiver.arrows[*it].label);
    rel.push_back(word);
  }
  return make_algebra(alg.field, q, rel);
}

// Nakayama test: every vertex has at most one incoming and one outgoing arrow.
template <class F>
bool is_nakayama(const Algebra<F>& alg) {
  std::vector<int> in(alg.num_vertices(), 0), out(alg.num_vertices(), 0);
  for (const Arrow& a : alg.quiver.arrows) {
    if (++out[a.src] > 1) return false;
    if (++in[a.tgt] > 1) return false;
  }
  return true;
}

}  // namespace qtilt

#endif
