#ifndef QTILT_PCOMPLEX_HPP
#define QTILT_PCOMPLEX_HPP

#include "qtilt/module_homalg.hpp"

namespace qtilt {

// Bounded complex of direct sums of canonical projectives. Terms are indexed
// by cohomological degree lo_deg .. lo_deg + len - 1; diff[i] maps term i to
// term i+1.
template <class F>
struct PComplex {
  const AlgebraHandle<F>* h = nullptr;
  int lo_deg = 0;
  std::vector<std::vector<int>> verts;  // projective vertices per term
  std::vector<Module<F>> term_mods;     // realized direct sums
  std::vector<std::vector<ModuleMap<F>>> term_inc, term_proj;  // block maps
  std::vector<ModuleMap<F>> diff;

  int len() const { return static_cast<int>(verts.size()); }
  int hi_deg() const { return lo_deg + len() - 1; }
  bool has_deg(int q) const { return q >= lo_deg && q <= hi_deg(); }
  const Module<F>& term(int q) const { return term_mods[q - lo_deg]; }
};

template <class F>
PComplex<F> make_pcomplex(const AlgebraHandle<F>* h, int lo_deg,
                          std::vector<std::vector<int>> verts) {
  PComplex<F> c;
  c.h = h;
  c.lo_deg = lo_deg;
  c.verts = std::move(verts);
  for (auto& vs : c.verts) {
    std::vector<Module<F>> blocks;
    for (int v : vs) blocks.push_back(projective_module(h, v));
    std::vector<const Module<F>*> ptrs;
    for (auto& b : blocks) ptrs.push_back(&b);
    SumDecomp<F> sd = direct_sum(h, ptrs);
    c.term_mods.push_back(sd.sum);
    c.term_inc.push_back(sd.inc);
    c.term_proj.push_back(sd.proj);
  }
  const F& f = h->alg->field;
  for (int i = 0; i + 1 < c.len(); ++i) c.diff.push_back(zero_map(c.term_mods[i], c.term_mods[i + 1]));
  (void)f;
  return c;
}

// A chain map: one component per degree of the source (missing target degrees
// are implicitly zero).
template <class F>
struct ChainMap {
  int src_lo = 0, tgt_lo = 0;
  std::vector<ModuleMap<F>> comp;  // comp[i]: src term i -> tgt term (src_lo + i - tgt_lo)
};

template <class F>
ChainMap<F> zero_chain_map(const PComplex<F>& A, const PComplex<F>& B) {
  ChainMap<F> m;
  m.src_lo = A.lo_deg;
  m.tgt_lo = B.lo_deg;
  for (int i = 0; i < A.len(); ++i) {
    int q = A.lo_deg + i;
    if (B.has_deg(q))
      m.comp.push_back(zero_map(A.term_mods[i], B.term(q)));
    else
      m.comp.push_back(zero_map(A.term_mods[i], zero_module(A.h)));
  }
  return m;
}

// The space of chain maps A -> B together with the null-homotopic subspace.
// Coordinates flatten the per-degree hom spaces in degree order.
template <class F>
struct ChainHomSpace {
  std::vector<HomSpace<F>> degree_homs;  // per source degree (target degree matched)
  std::vector<int> offsets;
  int total_vars = 0;
  Subspace<F> chain_space;      // subspace of coordinate space cut out by d-commutation
  Subspace<F> null_homotopic;   // subspace of boundaries
  QuotientData<F> classes;      // chain_space modulo null_homotopic, in ambient coords

  int dim() const { return classes.projection.rows; }
};

template <class F>
std::vector<typename F::Elt> flatten_chain(const F& f, const ChainHomSpace<F>& hs, const PComplex<F>& A,
                                           const PComplex<F>& B, const ChainMap<F>& m) {
  std::vector<typename F::Elt> out;
  for (int i = 0; i < A.len(); ++i) {
    int q = A.lo_deg + i;
    if (!B.has_deg(q)) continue;
    auto part = hs.degree_homs[i].flatten(f, m.comp[i]);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// Graded "matrix unit" for the ambient coordinate grid of a hom space; these
// are plain linear maps used only to express linear constraints.
template <class F>
ModuleMap<F> unit_graded_map(const F& f, const HomSpace<F>& hs, const Module<F>& src,
                             const Module<F>& tgt, int kvar) {
  ModuleMap<F> m = zero_map(src, tgt);
  int v = 0;
  while (v + 1 < static_cast<int>(hs.var_offsets.size()) && kvar >= hs.var_offsets[v + 1]) ++v;
  int rem = kvar - hs.var_offsets[v];
  int cols = src.dims[v];
  if (cols > 0 && tgt.dims[v] > 0) m.comp[v].at(rem / cols, rem % cols) = f.one();
  return m;
}

template <class F>
ChainHomSpace<F> chain_hom_space(const PComplex<F>& A, const PComplex<F>& B) {
  const F& f = A.h->alg->field;
  ChainHomSpace<F> hs;
  hs.offsets.assign(A.len() + 1, 0);
  for (int i = 0; i < A.len(); ++i) {
    int q = A.lo_deg + i;
    if (B.has_deg(q)) {
      hs.degree_homs.push_back(hom_basis(A.term_mods[i], B.term(q)));
      hs.offsets[i + 1] = hs.offsets[i] + hs.degree_homs.back().total_vars;
    } else {
      hs.degree_homs.push_back(hom_basis(A.term_mods[i], zero_module(A.h)));
      hs.offsets[i + 1] = hs.offsets[i];
    }
  }
  hs.total_vars = hs.offsets[A.len()];

  // per-degree components must be intertwiners
  std::vector<std::vector<typename F::Elt>> mod_rows;
  for (int i = 0; i < A.len(); ++i) {
    int q = A.lo_deg + i;
    if (!B.has_deg(q)) continue;
    const HomSpace<F>& dh = hs.degree_homs[i];
    for (int b = 0; b < dh.dim; ++b) {
      std::vector<typename F::Elt> row(hs.total_vars, f.zero());
      auto flat = dh.flatten(f, dh.basis[b]);
      for (int c = 0; c < dh.total_vars; ++c) row[hs.offsets[i] + c] = flat[c];
      mod_rows.push_back(row);
    }
  }
  Mat<F> modmat(f, static_cast<int>(mod_rows.size()), hs.total_vars);
  for (size_t r = 0; r < mod_rows.size(); ++r)
    for (int c = 0; c < hs.total_vars; ++c) modmat.at(static_cast<int>(r), c) = mod_rows[r][c];
  Subspace<F> intertwiners = make_subspace(modmat);

  // commutation d_B ∘ phi^q = phi^{q+1} ∘ d_A, one linear block per degree
  std::vector<Mat<F>> constraint_mats;
  int total_constraints = 0;
  for (int i = 0; i < A.len(); ++i) {
    int q = A.lo_deg + i;
    if (!B.has_deg(q + 1)) continue;
    HomSpace<F> target = hom_basis(A.term_mods[i], B.term(q + 1));
    Mat<F> cm(f, target.total_vars, hs.total_vars);
    if (B.has_deg(q) && (q - B.lo_deg) + 1 < B.len()) {
      const HomSpace<F>& src_hom = hs.degree_homs[i];
      int bq = q - B.lo_deg;
      for (int kvar = 0; kvar < src_hom.total_vars; ++kvar) {
        ModuleMap<F> unit = unit_graded_map(f, src_hom, A.term_mods[i], B.term(q), kvar);
        ModuleMap<F> img = compose_maps(unit, B.diff[bq]);
        auto flat = target.flatten(f, img);
        for (int r = 0; r < target.total_vars; ++r)
          cm.at(r, hs.offsets[i] + kvar) = f.add(cm.at(r, hs.offsets[i] + kvar), flat[r]);
      }
    }
    if (i + 1 < A.len()) {
      const HomSpace<F>& nxt_hom = hs.degree_homs[i + 1];
      for (int kvar = 0; kvar < nxt_hom.total_vars; ++kvar) {
        ModuleMap<F> unit = unit_graded_map(f, nxt_hom, A.term_mods[i + 1], B.term(q + 1), kvar);
        ModuleMap<F> img = compose_maps(A.diff[i], unit);
        auto flat = target.flatten(f, img);
        for (int r = 0; r < target.total_vars; ++r)
          cm.at(r, hs.offsets[i + 1] + kvar) = f.sub(cm.at(r, hs.offsets[i + 1] + kvar), flat[r]);
      }
    }
    constraint_mats.push_back(cm);
    total_constraints += constraint_mats.back().rows;
  }
  Mat<F> big(f, total_constraints, hs.total_vars);
  int ro = 0;
  for (const auto& cm : constraint_mats) {
    for (int r = 0; r < cm.rows; ++r)
      for (int c = 0; c < hs.total_vars; ++c) big.at(ro + r, c) = cm.at(r, c);
    ro += cm.rows;
  }
  hs.chain_space = intersect(kernel_basis(big), intertwiners);

  // null-homotopic subspace: spanned by d_B h + h d_A over homotopy components
  // h^q: A^q -> B^{q-1}
  std::vector<std::vector<typename F::Elt>> null_rows;
  for (int i = 0; i < A.len(); ++i) {
    int q = A.lo_deg + i;
    if (!B.has_deg(q - 1)) continue;
    HomSpace<F> hspace = hom_basis(A.term_mods[i], B.term(q - 1));
    for (int k = 0; k < hspace.dim; ++k) {
      const ModuleMap<F>& hmap = hspace.basis[k];
      ChainMap<F> null_map = zero_chain_map(A, B);
      int bq = q - 1 - B.lo_deg;
      if (bq + 1 < B.len() && B.has_deg(q)) {
        // d_B ∘ h contributes at degree q
        null_map.comp[i] = add_maps(null_map.comp[i], compose_maps(hmap, B.diff[bq]));
      }
      if (i > 0 && B.has_deg(q - 1)) {
        // h ∘ d_A contributes at degree q-1
        null_map.comp[i - 1] = add_maps(null_map.comp[i - 1], compose_maps(A.diff[i - 1], hmap));
      }
      null_rows.push_back(flatten_chain(f, hs, A, B, null_map));
    }
  }
  Mat<F> nm(f, static_cast<int>(null_rows.size()), hs.total_vars);
  for (size_t r = 0; r < null_rows.size(); ++r)
    for (int c = 0; c < hs.total_vars; ++c) nm.at(static_cast<int>(r), c) = null_rows[r][c];
  hs.null_homotopic = make_subspace(nm);
  hs.classes = quotient_basis(hs.chain_space, hs.null_homotopic);
  return hs;
}

// Mapping cone of a chain map phi: A -> B: terms A^{q+1} ⊕ B^q,
// differential [[-d_A, 0], [phi, d_B]].
template <class F>
struct MappingCone {
  PComplex<F> cone;
  ChainMap<F> incl;  // B -> cone (strict)
  ChainMap<F> proj;  // cone -> A[1] (strict)
};

template <class F>
MappingCone<F> mapping_cone(const PComplex<F>& A, const PComplex<F>& B, const ChainMap<F>& phi) {
  const AlgebraHandle<F>* h = A.h;
  const F& f = h->alg->field;
  int lo = std::min(A.lo_deg - 1, B.lo_deg);
  int hi = std::max(A.hi_deg() - 1, B.hi_deg());
  std::vector<std::vector<int>> verts;
  for (int q = lo; q <= hi; ++q) {
    std::vector<int> vs;
    if (A.has_deg(q + 1))
      for (int v : A.verts[q + 1 - A.lo_deg]) vs.push_back(v);
    if (B.has_deg(q))
      for (int v : B.verts[q - B.lo_deg]) vs.push_back(v);
    verts.push_back(vs);
  }
  MappingCone<F> out;
  out.cone = make_pcomplex<F>(h, lo, verts);

  // helper: block maps into/out of the cone terms
  auto a_part_count = [&](int q) { return A.has_deg(q + 1) ? static_cast<int>(A.verts[q + 1 - A.lo_deg].size()) : 0; };

  // differentials
  for (int q = lo; q < hi; ++q) {
    int ci = q - lo;
    ModuleMap<F> d = zero_map(out.cone.term_mods[ci], out.cone.term_mods[ci + 1]);
    // block A^{q+1} -> A^{q+2}: -d_A
    if (A.has_deg(q + 1) && A.has_deg(q + 2)) {
      const ModuleMap<F>& da = A.diff[q + 1 - A.lo_deg];
      // embed: cone^q ->(proj to A-part) A^{q+1} ->(-d_A) A^{q+2} ->(inc) cone^{q+1}
      // build with block index bookkeeping
      int na_src = a_part_count(q);
      for (int b = 0; b < na_src; ++b) {
        ModuleMap<F> m = compose_maps(compose_maps(out.cone.term_proj[ci][b], A.term_inc[q + 1 - A.lo_deg][b]),
                                      da);
        // target: A-part of cone^{q+1}
        for (int tb = 0; tb < a_part_count(q + 1); ++tb) {
          ModuleMap<F> mm = compose_maps(compose_maps(m, A.term_proj[q + 2 - A.lo_deg][tb]),
                                         out.cone.term_inc[ci + 1][tb]);
          d = add_maps(d, scale_map(f, mm, f.neg(f.one())));
        }
      }
    }
    // block A^{q+1} -> B^{q+1}: phi^{q+1}
    if (A.has_deg(q + 1) && B.has_deg(q + 1)) {
      const ModuleMap<F>& p = phi.comp[q + 1 - A.lo_deg];
      int na_src = a_part_count(q);
      int off_t = a_part_count(q + 1);
      for (int b = 0; b < na_src; ++b) {
        ModuleMap<F> m = compose_maps(compose_maps(out.cone.term_proj[ci][b], A.term_inc[q + 1 - A.lo_deg][b]), p);
        for (int tb = 0; tb < static_cast<int>(B.verts[q + 1 - B.lo_deg].size()); ++tb) {
          ModuleMap<F> mm = compose_maps(compose_maps(m, B.term_proj[q + 1 - B.lo_deg][tb]),
                                         out.cone.term_inc[ci + 1][off_t + tb]);
          d = add_maps(d, mm);
        }
      }
    }
    // block B^q -> B^{q+1}: d_B
    if (B.has_deg(q) && B.has_deg(q + 1)) {
      const ModuleMap<F>& db = B.diff[q - B.lo_deg];
      int off_s = a_part_count(q);
      int off_t = a_part_count(q + 1);
      for (int b = 0; b < static_cast<int>(B.verts[q - B.lo_deg].size()); ++b) {
        ModuleMap<F> m = compose_maps(compose_maps(out.cone.term_proj[ci][off_s + b], B.term_inc[q - B.lo_deg][b]), db);
        for (int tb = 0; tb < static_cast<int>(B.verts[q + 1 - B.lo_deg].size()); ++tb) {
          ModuleMap<F> mm = compose_maps(compose_maps(m, B.term_proj[q + 1 - B.lo_deg][tb]),
                                         out.cone.term_inc[ci + 1][off_t + tb]);
          d = add_maps(d, mm);
        }
      }
    }
    out.cone.diff[ci] = d;
  }

  // strict inclusion B -> cone and projection cone -> A[1]
  out.incl.src_lo = B.lo_deg;
  out.incl.tgt_lo = lo;
  for (int i = 0; i < B.len(); ++i) {
    int q = B.lo_deg + i;
    ModuleMap<F> m = zero_map(B.term_mods[i], out.cone.term(q));
    int off = a_part_count(q);
    for (int b = 0; b < static_cast<int>(B.verts[i].size()); ++b)
      m = add_maps(m, compose_maps(B.term_proj[i][b], out.cone.term_inc[q - lo][off + b]));
    out.incl.comp.push_back(m);
  }
  out.proj.src_lo = lo;
  out.proj.tgt_lo = A.lo_deg - 1;
  for (int q = lo; q <= hi; ++q) {
    // A[1]^q = A^{q+1}
    ModuleMap<F> m = A.has_deg(q + 1) ? zero_map(out.cone.term(q), A.term(q + 1))
                                      : zero_map(out.cone.term(q), zero_module(h));
    if (A.has_deg(q + 1))
      for (int b = 0; b < a_part_count(q); ++b)
        m = add_maps(m, compose_maps(out.cone.term_proj[q - lo][b], A.term_inc[q + 1 - A.lo_deg][b]));
    out.proj.comp.push_back(m);
  }
  return out;
}

// Compose chain maps degreewise (then ∘ first).
template <class F>
ChainMap<F> compose_chain(const PComplex<F>& A, const PComplex<F>& B, const PComplex<F>& C,
                          const ChainMap<F>& first, const ChainMap<F>& then) {
  ChainMap<F> r;
  r.src_lo = A.lo_deg;
  r.tgt_lo = C.lo_deg;
  for (int i = 0; i < A.len(); ++i) {
    int q = A.lo_deg + i;
    if (B.has_deg(q) && C.has_deg(q)) {
      r.comp.push_back(compose_maps(first.comp[i], then.comp[q - B.lo_deg]));
    } else if (C.has_deg(q)) {
      r.comp.push_back(zero_map(A.term_mods[i], C.term(q)));
    } else {
      r.comp.push_back(zero_map(A.term_mods[i], zero_module(A.h)));
    }
  }
  return r;
}

}  // namespace qtilt

#endif
