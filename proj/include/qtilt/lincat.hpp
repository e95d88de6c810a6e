#ifndef QTILT_LINCAT_HPP
#define QTILT_LINCAT_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "qtilt/module_ops.hpp"

namespace qtilt {

// Finite additive-category skeleton: indecomposable objects, exact hom-space
// bases carried as abstract coordinate spaces, and a composition tensor.
// One engine serves module, stable, derived, cluster and quotient categories.
template <class F>
struct LinCategory {
  F field;
  std::vector<std::string> objects;
  std::vector<std::vector<int>> hom_dim;  // [src][tgt]
  // composition tensor: comp[{i,j,k}][ (p*dim_jk + q)*dim_ik + r ] is the
  // r-coordinate of (g_q ∘ f_p) for f_p in Hom(i,j), g_q in Hom(j,k)
  std::map<std::tuple<int, int, int>, std::vector<typename F::Elt>> comp;
  std::vector<std::vector<typename F::Elt>> id_coords;  // identity of Hom(i,i)

  int n() const { return static_cast<int>(objects.size()); }
  int object_index(const std::string& label) const {
    for (int i = 0; i < n(); ++i)
      if (objects[i] == label) return i;
    throw std::invalid_argument("unknown object " + label);
  }

  typename F::Elt comp_coeff(int i, int j, int k, int p, int q, int r) const {
    auto it = comp.find({i, j, k});
    if (it == comp.end()) return field.zero();
    int djk = hom_dim[j][k], dik = hom_dim[i][k];
    return it->second[(static_cast<size_t>(p) * djk + q) * dik + r];
  }

  // coords of g∘f for coordinate vectors f in Hom(i,j), g in Hom(j,k)
  std::vector<typename F::Elt> compose_coords(int i, int j, int k,
                                              const std::vector<typename F::Elt>& fc,
                                              const std::vector<typename F::Elt>& gc) const {
    std::vector<typename F::Elt> out(hom_dim[i][k], field.zero());
    auto it = comp.find({i, j, k});
    if (it == comp.end()) return out;
    int dij = hom_dim[i][j], djk = hom_dim[j][k], dik = hom_dim[i][k];
    for (int p = 0; p < dij; ++p) {
      if (field.is_zero(fc[p])) continue;
      for (int q = 0; q < djk; ++q) {
        if (field.is_zero(gc[q])) continue;
        typename F::Elt c = field.mul(fc[p], gc[q]);
        for (int r = 0; r < dik; ++r)
          out[r] = field.add(out[r], field.mul(c, it->second[(static_cast<size_t>(p) * djk + q) * dik + r]));
      }
    }
    return out;
  }
};

// Formal direct sum of indecomposable objects (ordered multiset).
struct SumObj {
  std::vector<int> parts;
  int size() const { return static_cast<int>(parts.size()); }
  bool operator==(const SumObj& o) const { return parts == o.parts; }
};

// Morphism between formal sums, blocks of hom-space coordinates.
template <class F>
struct CatMor {
  SumObj src, tgt;
  // blocks[t][s]: coordinates in Hom(src.parts[s], tgt.parts[t])
  std::vector<std::vector<std::vector<typename F::Elt>>> blocks;
};

template <class F>
CatMor<F> zero_mor(const LinCategory<F>& C, const SumObj& src, const SumObj& tgt) {
  CatMor<F> m;
  m.src = src;
  m.tgt = tgt;
  m.blocks.resize(tgt.size());
  for (int t = 0; t < tgt.size(); ++t) {
    m.blocks[t].resize(src.size());
    for (int s = 0; s < src.size(); ++s)
      m.blocks[t][s].assign(C.hom_dim[src.parts[s]][tgt.parts[t]], C.field.zero());
  }
  return m;
}

template <class F>
CatMor<F> identity_mor(const LinCategory<F>& C, const SumObj& x) {
  CatMor<F> m = zero_mor(C, x, x);
  for (int s = 0; s < x.size(); ++s) m.blocks[s][s] = C.id_coords[x.parts[s]];
  return m;
}

template <class F>
CatMor<F> basis_mor(const LinCategory<F>& C, int i, int j, int k) {
  CatMor<F> m = zero_mor(C, SumObj{{i}}, SumObj{{j}});
  m.blocks[0][0][k] = C.field.one();
  return m;
}

template <class F>
bool mor_is_zero(const LinCategory<F>& C, const CatMor<F>& m) {
  for (const auto& row : m.blocks)
    for (const auto& blk : row)
      for (const auto& c : blk)
        if (!C.field.is_zero(c)) return false;
  return true;
}

template <class F>
CatMor<F> add_mors(const LinCategory<F>& C, const CatMor<F>& a, const CatMor<F>& b) {
  CatMor<F> r = a;
  for (size_t t = 0; t < r.blocks.size(); ++t)
    for (size_t s = 0; s < r.blocks[t].size(); ++s)
      for (size_t k = 0; k < r.blocks[t][s].size(); ++k)
        r.blocks[t][s][k] = C.field.add(r.blocks[t][s][k], b.blocks[t][s][k]);
  return r;
}

template <class F>
CatMor<F> scale_mor(const LinCategory<F>& C, const CatMor<F>& a, const typename F::Elt& c) {
  CatMor<F> r = a;
  for (auto& row : r.blocks)
    for (auto& blk : row)
      for (auto& x : blk) x = C.field.mul(x, c);
  return r;
}

// then ∘ first
template <class F>
CatMor<F> compose_mors(const LinCategory<F>& C, const CatMor<F>& first, const CatMor<F>& then) {
  CatMor<F> r = zero_mor(C, first.src, then.tgt);
  for (int t = 0; t < then.tgt.size(); ++t)
    for (int s = 0; s < first.src.size(); ++s)
      for (int m = 0; m < first.tgt.size(); ++m) {
        auto part = C.compose_coords(first.src.parts[s], first.tgt.parts[m], then.tgt.parts[t],
                                     first.blocks[m][s], then.blocks[t][m]);
        for (size_t k = 0; k < part.size(); ++k)
          r.blocks[t][s][k] = C.field.add(r.blocks[t][s][k], part[k]);
      }
  return r;
}

// total hom dimension between sums
template <class F>
int sum_hom_dim(const LinCategory<F>& C, const SumObj& a, const SumObj& b) {
  int d = 0;
  for (int s : a.parts)
    for (int t : b.parts) d += C.hom_dim[s][t];
  return d;
}

// Flatten Hom(a, b) into a coordinate space; basis enumerated block by block.
template <class F>
std::vector<CatMor<F>> sum_hom_basis(const LinCategory<F>& C, const SumObj& a, const SumObj& b) {
  std::vector<CatMor<F>> out;
  for (int t = 0; t < b.size(); ++t)
    for (int s = 0; s < a.size(); ++s)
      for (int k = 0; k < C.hom_dim[a.parts[s]][b.parts[t]]; ++k) {
        CatMor<F> m = zero_mor(C, a, b);
        m.blocks[t][s][k] = C.field.one();
        out.push_back(m);
      }
  return out;
}

template <class F>
std::vector<typename F::Elt> mor_flatten(const LinCategory<F>& C, const CatMor<F>& m) {
  std::vector<typename F::Elt> out;
  for (int t = 0; t < m.tgt.size(); ++t)
    for (int s = 0; s < m.src.size(); ++s)
      for (const auto& c : m.blocks[t][s]) out.push_back(c);
  (void)C;
  return out;
}

// ---- structural verification ------------------------------------------------

template <class F>
void verify_category(const LinCategory<F>& C) {
  const F& f = C.field;
  int n = C.n();
  // identities neutral
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int d = C.hom_dim[i][j];
      for (int k = 0; k < d; ++k) {
        std::vector<typename F::Elt> e(d, f.zero());
        e[k] = f.one();
        auto left = C.compose_coords(i, i, j, C.id_coords[i], e);
        auto right = C.compose_coords(i, j, j, e, C.id_coords[j]);
        for (int r = 0; r < d; ++r) {
          if (!f.eq(left[r], r == k ? f.one() : f.zero()))
            throw std::runtime_error("category identity failure (left)");
          if (!f.eq(right[r], r == k ? f.one() : f.zero()))
            throw std::runtime_error("category identity failure (right)");
        }
      }
    }
  // associativity on basis triples
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (C.hom_dim[i][j] == 0) continue;
      for (int k = 0; k < n; ++k) {
        if (C.hom_dim[j][k] == 0) continue;
        for (int l = 0; l < n; ++l) {
          if (C.hom_dim[k][l] == 0) continue;
          for (int p = 0; p < C.hom_dim[i][j]; ++p)
            for (int q = 0; q < C.hom_dim[j][k]; ++q)
              for (int s = 0; s < C.hom_dim[k][l]; ++s) {
                std::vector<typename F::Elt> fp(C.hom_dim[i][j], f.zero());
                fp[p] = f.one();
                std::vector<typename F::Elt> gq(C.hom_dim[j][k], f.zero());
                gq[q] = f.one();
                std::vector<typename F::Elt> hs(C.hom_dim[k][l], f.zero());
                hs[s] = f.one();
                auto gf = C.compose_coords(i, j, k, fp, gq);
                auto h_gf = C.compose_coords(i, k, l, gf, hs);
                auto hg = C.compose_coords(j, k, l, gq, hs);
                auto hg_f = C.compose_coords(i, j, l, fp, hg);
                for (int r = 0; r < C.hom_dim[i][l]; ++r)
                  if (!f.eq(h_gf[r], hg_f[r]))
                    throw std::runtime_error("category associativity failure");
              }
        }
      }
    }
}

// ---- mono / epi --------------------------------------------------------------

// f is a monomorphism iff Hom(W, f) is injective for every indecomposable W.
template <class F>
bool is_mono(const LinCategory<F>& C, const CatMor<F>& fm) {
  const F& f = C.field;
  for (int w = 0; w < C.n(); ++w) {
    SumObj W{{w}};
    auto dom = sum_hom_basis(C, W, fm.src);
    int cod_dim = sum_hom_dim(C, W, fm.tgt);
    if (dom.empty()) continue;
    Mat<F> m(f, cod_dim, static_cast<int>(dom.size()));
    for (size_t c = 0; c < dom.size(); ++c) {
      auto img = mor_flatten(C, compose_mors(C, dom[c], fm));
      for (int r = 0; r < cod_dim; ++r) m.at(r, static_cast<int>(c)) = img[r];
    }
    if (rank(m) != static_cast<int>(dom.size())) return false;
  }
  return true;
}

template <class F>
bool is_epi(const LinCategory<F>& C, const CatMor<F>& fm) {
  const F& f = C.field;
  for (int w = 0; w < C.n(); ++w) {
    SumObj W{{w}};
    auto dom = sum_hom_basis(C, fm.tgt, W);
    int cod_dim = sum_hom_dim(C, fm.src, W);
    if (dom.empty()) continue;
    Mat<F> m(f, cod_dim, static_cast<int>(dom.size()));
    for (size_t c = 0; c < dom.size(); ++c) {
      auto img = mor_flatten(C, compose_mors(C, fm, dom[c]));
      for (int r = 0; r < cod_dim; ++r) m.at(r, static_cast<int>(c)) = img[r];
    }
    if (rank(m) != static_cast<int>(dom.size())) return false;
  }
  return true;
}

template <class F>
bool is_isomorphism(const LinCategory<F>& C, const CatMor<F>& fm) {
  // solve g with g∘f = id and f∘g = id
  if (fm.src.size() != fm.tgt.size()) {
    // sums of different lengths can still be isomorphic only with equal
    // multiset; skeletal categories make length a quick filter
  }
  const F& f = C.field;
  auto basis = sum_hom_basis(C, fm.tgt, fm.src);
  int d1 = sum_hom_dim(C, fm.src, fm.src);
  int d2 = sum_hom_dim(C, fm.tgt, fm.tgt);
  Mat<F> sys(f, d1 + d2, static_cast<int>(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c) {
    auto a = mor_flatten(C, compose_mors(C, fm, basis[c]));        // g∘f (on src)
    auto b = mor_flatten(C, compose_mors(C, basis[c], fm));        // f∘g (on tgt)
    for (int r = 0; r < d1; ++r) sys.at(r, static_cast<int>(c)) = a[r];
    for (int r = 0; r < d2; ++r) sys.at(d1 + r, static_cast<int>(c)) = b[r];
  }
  std::vector<typename F::Elt> rhs = mor_flatten(C, identity_mor(C, fm.src));
  auto rhs2 = mor_flatten(C, identity_mor(C, fm.tgt));
  rhs.insert(rhs.end(), rhs2.begin(), rhs2.end());
  return solve(sys, rhs).has_value();
}

// ---- ideal quotient -----------------------------------------------------------

struct Subcat {
  std::vector<int> objects;  // indices into the ambient category, sorted
  bool contains(int i) const { return std::binary_search(objects.begin(), objects.end(), i); }
};

inline Subcat make_subcat(std::vector<int> objs) {
  std::sort(objs.begin(), objs.end());
  objs.erase(std::unique(objs.begin(), objs.end()), objs.end());
  return Subcat{objs};
}

template <class F>
struct FactorResult {
  LinCategory<F> cat;
  std::vector<int> old_to_new;               // -1 for deleted objects
  std::vector<int> new_to_old;
  // projection per retained pair: new coords = proj * old coords
  std::map<std::pair<int, int>, Mat<F>> proj;
  std::map<std::pair<int, int>, Mat<F>> section;  // new basis representatives in old coords
};

// Quotient by the ideal of morphisms factoring through objects of S. Retained
// objects are the complement; hom spaces are quotients by the two-sided ideal.
template <class F>
FactorResult<F> factor_ideal(const LinCategory<F>& C, const Subcat& S) {
  const F& f = C.field;
  FactorResult<F> out;
  out.cat.field = f;
  out.old_to_new.assign(C.n(), -1);
  for (int i = 0; i < C.n(); ++i)
    if (!S.contains(i)) {
      out.old_to_new[i] = static_cast<int>(out.new_to_old.size());
      out.new_to_old.push_back(i);
      out.cat.objects.push_back(C.objects[i]);
    }
  int m = static_cast<int>(out.new_to_old.size());
  out.cat.hom_dim.assign(m, std::vector<int>(m, 0));

  // ideal subspaces and quotient data per retained ordered pair
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int i = out.new_to_old[a], j = out.new_to_old[b];
      int d = C.hom_dim[i][j];
      std::vector<std::vector<typename F::Elt>> rows;
      for (int s : S.objects) {
        int d1 = C.hom_dim[i][s], d2 = C.hom_dim[s][j];
        for (int p = 0; p < d1; ++p)
          for (int q = 0; q < d2; ++q) {
            std::vector<typename F::Elt> fp(d1, f.zero());
            fp[p] = f.one();
            std::vector<typename F::Elt> gq(d2, f.zero());
            gq[q] = f.one();
            rows.push_back(C.compose_coords(i, s, j, fp, gq));
          }
      }
      Mat<F> rmat(f, static_cast<int>(rows.size()), d);
      for (size_t r = 0; r < rows.size(); ++r)
        for (int k = 0; k < d; ++k) rmat.at(static_cast<int>(r), k) = rows[r][k];
      Subspace<F> ideal = make_subspace(rmat);
      QuotientData<F> qd = quotient_basis(full_space(f, d), ideal);
      out.cat.hom_dim[a][b] = qd.projection.rows;
      out.proj[{a, b}] = qd.projection;
      out.section[{a, b}] = qd.section;
    }

  // induced composition on section representatives
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        int i = out.new_to_old[a], j = out.new_to_old[b], k = out.new_to_old[c];
        int dab = out.cat.hom_dim[a][b], dbc = out.cat.hom_dim[b][c], dac = out.cat.hom_dim[a][c];
        if (dab == 0 || dbc == 0 || dac == 0) continue;
        std::vector<typename F::Elt> tensor(static_cast<size_t>(dab) * dbc * dac, f.zero());
        for (int p = 0; p < dab; ++p)
          for (int q = 0; q < dbc; ++q) {
            std::vector<typename F::Elt> fp(C.hom_dim[i][j], f.zero());
            for (int t = 0; t < C.hom_dim[i][j]; ++t) fp[t] = out.section[{a, b}].at(p, t);
            std::vector<typename F::Elt> gq(C.hom_dim[j][k], f.zero());
            for (int t = 0; t < C.hom_dim[j][k]; ++t) gq[t] = out.section[{b, c}].at(q, t);
            auto comp_old = C.compose_coords(i, j, k, fp, gq);
            auto comp_new = mat_apply(out.proj[{a, c}], comp_old);
            for (int r = 0; r < dac; ++r)
              tensor[(static_cast<size_t>(p) * dbc + q) * dac + r] = comp_new[r];
          }
        out.cat.comp[{a, b, c}] = std::move(tensor);
      }

  for (int a = 0; a < m; ++a) {
    int i = out.new_to_old[a];
    out.cat.id_coords.push_back(mat_apply(out.proj[{a, a}], C.id_coords[i]));
  }
  verify_category(out.cat);
  return out;
}

// Push a morphism of the ambient category into the quotient (summands lying
// in S are dropped).
template <class F>
CatMor<F> project_mor(const LinCategory<F>& C, const FactorResult<F>& Q, const CatMor<F>& m) {
  (void)C;
  SumObj src, tgt;
  std::vector<int> keep_s, keep_t;
  for (int s = 0; s < m.src.size(); ++s)
    if (Q.old_to_new[m.src.parts[s]] >= 0) {
      keep_s.push_back(s);
      src.parts.push_back(Q.old_to_new[m.src.parts[s]]);
    }
  for (int t = 0; t < m.tgt.size(); ++t)
    if (Q.old_to_new[m.tgt.parts[t]] >= 0) {
      keep_t.push_back(t);
      tgt.parts.push_back(Q.old_to_new[m.tgt.parts[t]]);
    }
  CatMor<F> r = zero_mor(Q.cat, src, tgt);
  for (size_t t = 0; t < keep_t.size(); ++t)
    for (size_t s = 0; s < keep_s.size(); ++s) {
      auto key = std::make_pair(src.parts[s], tgt.parts[t]);
      r.blocks[t][s] = mat_apply(Q.proj.at(key), m.blocks[keep_t[t]][keep_s[s]]);
    }
  return r;
}

}  // namespace qtilt

#endif
