#ifndef QTILT_MODULE_HPP
#define QTILT_MODULE_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtilt/quiver.hpp"

namespace qtilt {

struct AlgebraMismatch : std::runtime_error {
  AlgebraMismatch() : std::runtime_error("AlgebraMismatch: modules over different algebras") {}
};
struct NonSplitField : std::runtime_error {
  explicit NonSplitField(const std::string& m) : std::runtime_error("NonSplitField: " + m) {}
};
struct HasProjectiveSummand : std::runtime_error {
  HasProjectiveSummand() : std::runtime_error("HasProjectiveSummand") {}
};
struct HasInjectiveSummand : std::runtime_error {
  HasInjectiveSummand() : std::runtime_error("HasInjectiveSummand") {}
};
struct IsProjective : std::runtime_error {
  IsProjective() : std::runtime_error("IsProjective") {}
};
struct FuelExhausted : std::runtime_error {
  explicit FuelExhausted(const std::string& m) : std::runtime_error("FuelExhausted: " + m) {}
};

// Opposite-algebra cache. op(op(A)) gives back the original object so that
// double duals are literal identities.
template <class F>
struct AlgebraHandle {
  std::shared_ptr<Algebra<F>> alg;
  mutable std::shared_ptr<AlgebraHandle<F>> op_ptr;
  mutable const AlgebraHandle<F>* op_back = nullptr;
};

template <class F>
const AlgebraHandle<F>* opposite(const AlgebraHandle<F>* h) {
  if (h->op_back) return h->op_back;
  if (!h->op_ptr) {
    h->op_ptr = std::make_shared<AlgebraHandle<F>>();
    h->op_ptr->alg = std::make_shared<Algebra<F>>(opposite_algebra(*h->alg));
    h->op_ptr->op_back = h;
  }
  return h->op_ptr.get();
}

template <class F>
std::shared_ptr<AlgebraHandle<F>> make_handle(Algebra<F> alg) {
  auto h = std::make_shared<AlgebraHandle<F>>();
  h->alg = std::make_shared<Algebra<F>>(std::move(alg));
  return h;
}

// A finite-dimensional representation: one vector space per vertex and one
// matrix per arrow, acting on column vectors (target_dim x source_dim).
template <class F>
struct Module {
  const AlgebraHandle<F>* h = nullptr;
  std::vector<int> dims;
  std::vector<Mat<F>> act;  // per arrow

  const Algebra<F>& alg() const { return *h->alg; }
  const F& field() const { return h->alg->field; }
  int total_dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }
  bool is_zero() const { return total_dim() == 0; }
};

template <class F>
struct ModuleMap {
  const Module<F>* src_ref = nullptr;  // not owned; used only transiently
  std::vector<Mat<F>> comp;            // per vertex: tgt.dims[v] x src.dims[v]
};

// Most code passes (src, tgt, map) explicitly; ModuleMap holds the matrices.

template <class F>
Module<F> zero_module(const AlgebraHandle<F>* h) {
  Module<F> m;
  m.h = h;
  m.dims.assign(h->alg->num_vertices(), 0);
  const F& f = h->alg->field;
  for (int a = 0; a < h->alg->num_arrows(); ++a)
    m.act.push_back(Mat<F>(f, 0, 0));
  return m;
}

template <class F>
ModuleMap<F> zero_map(const Module<F>& src, const Module<F>& tgt) {
  if (src.h != tgt.h) throw AlgebraMismatch();
  ModuleMap<F> f;
  const F& fl = src.field();
  for (int v = 0; v < static_cast<int>(src.dims.size()); ++v)
    f.comp.push_back(Mat<F>(fl, tgt.dims[v], src.dims[v]));
  return f;
}

template <class F>
ModuleMap<F> identity_map(const Module<F>& m) {
  ModuleMap<F> f;
  for (int v = 0; v < static_cast<int>(m.dims.size()); ++v)
    f.comp.push_back(Mat<F>::identity(m.field(), m.dims[v]));
  return f;
}

template <class F>
ModuleMap<F> compose_maps(const ModuleMap<F>& first, const ModuleMap<F>& then) {
  ModuleMap<F> r;
  for (size_t v = 0; v < first.comp.size(); ++v) r.comp.push_back(then.comp[v] * first.comp[v]);
  return r;
}

template <class F>
ModuleMap<F> add_maps(const ModuleMap<F>& a, const ModuleMap<F>& b) {
  ModuleMap<F> r;
  for (size_t v = 0; v < a.comp.size(); ++v) r.comp.push_back(a.comp[v] + b.comp[v]);
  return r;
}

template <class F>
ModuleMap<F> scale_map(const F& f, const ModuleMap<F>& a, const typename F::Elt& c) {
  ModuleMap<F> r;
  for (size_t v = 0; v < a.comp.size(); ++v) r.comp.push_back(a.comp[v].scaled(c));
  return r;
}

template <class F>
bool map_is_zero(const ModuleMap<F>& a) {
  for (const auto& m : a.comp)
    if (!m.is_zero()) return false;
  return true;
}

// Action of a path as a matrix M_source -> M_target.
template <class F>
Mat<F> path_action(const Module<F>& m, const Path& p) {
  const F& f = m.field();
  Mat<F> r = Mat<F>::identity(f, m.dims[p.source]);
  for (int ai : p.arrows) r = m.act[ai] * r;
  return r;
}

template <class F>
void validate_module(const Module<F>& m) {
  const Algebra<F>& A = m.alg();
  for (int a = 0; a < A.num_arrows(); ++a) {
    const Arrow& ar = A.quiver.arrows[a];
    if (m.act[a].rows != m.dims[ar.tgt] || m.act[a].cols != m.dims[ar.src])
      throw DimensionMismatch("module arrow matrix shape");
  }
  for (const Path& r : A.relations)
    if (!path_action(m, r).is_zero())
      throw std::runtime_error("module does not satisfy relation " + A.path_name(r));
}

// ---- canonical simples, projectives, injectives -------------------------

template <class F>
Module<F> simple_module(const AlgebraHandle<F>* h, int v) {
  Module<F> m = zero_module(h);
  m.dims[v] = 1;
  const F& f = h->alg->field;
  for (int a = 0; a < h->alg->num_arrows(); ++a) {
    const Arrow& ar = h->alg->quiver.arrows[a];
    m.act[a] = Mat<F>(f, m.dims[ar.tgt], m.dims[ar.src]);
  }
  return m;
}

// Basis paths from v to w, in algebra basis order.
template <class F>
std::vector<int> paths_between(const Algebra<F>& A, int v, int w) {
  std::vector<int> out;
  for (size_t i = 0; i < A.basis.size(); ++i)
    if (A.basis[i].source == v && A.basis[i].target == w) out.push_back(static_cast<int>(i));
  return out;
}

// P_v truncated at radical length cap (cap<0: full projective). Realized on
// the relation-free paths starting at v of length < cap.
template <class F>
Module<F> truncated_projective(const AlgebraHandle<F>* h, int v, int cap) {
  const Algebra<F>& A = *h->alg;
  const F& f = A.field;
  // basis vectors at vertex w: paths v->w (length filtered), in basis order
  std::vector<std::vector<int>> basis_at(A.num_vertices());
  for (size_t i = 0; i < A.basis.size(); ++i) {
    const Path& p = A.basis[i];
    if (p.source != v) continue;
    if (cap >= 0 && p.length() >= cap) continue;
    basis_at[p.target].push_back(static_cast<int>(i));
  }
  Module<F> m = zero_module(h);
  for (int w = 0; w < A.num_vertices(); ++w) m.dims[w] = static_cast<int>(basis_at[w].size());
  for (int a = 0; a < A.num_arrows(); ++a) {
    const Arrow& ar = A.quiver.arrows[a];
    Mat<F> act(f, m.dims[ar.tgt], m.dims[ar.src]);
    for (int col = 0; col < m.dims[ar.src]; ++col) {
      const Path& p = A.basis[basis_at[ar.src][col]];
      std::vector<int> seq = p.arrows;
      seq.push_back(a);
      if (A.contains_relation(seq)) continue;
      if (cap >= 0 && static_cast<int>(seq.size()) >= cap) continue;
      auto it = A.basis_ix.find({p.source, seq});
      if (it == A.basis_ix.end()) continue;
      // locate row among basis_at[tgt]
      for (int row = 0; row < m.dims[ar.tgt]; ++row)
        if (basis_at[ar.tgt][row] == it->second) {
          act.at(row, col) = f.one();
          break;
        }
    }
    m.act[a] = act;
  }
  return m;
}

template <class F>
Module<F> projective_module(const AlgebraHandle<F>* h, int v) {
  return truncated_projective(h, v, -1);
}

// Duality D: mod(A) -> mod(A^op); vertex-wise transpose.
template <class F>
Module<F> dual_module(const Module<F>& m) {
  const AlgebraHandle<F>* oh = opposite(m.h);
  Module<F> d;
  d.h = oh;
  d.dims = m.dims;
  for (int a = 0; a < m.alg().num_arrows(); ++a) d.act.push_back(m.act[a].transposed());
  return d;
}

template <class F>
ModuleMap<F> dual_map(const ModuleMap<F>& f) {
  ModuleMap<F> d;
  for (const auto& c : f.comp) d.comp.push_back(c.transposed());
  return d;
}

template <class F>
Module<F> injective_module(const AlgebraHandle<F>* h, int v) {
  return dual_module(projective_module(opposite(h), v));
}

// ---- direct sums ---------------------------------------------------------

template <class F>
struct SumDecomp {
  Module<F> sum;
  std::vector<ModuleMap<F>> inc;   // X_i -> sum
  std::vector<ModuleMap<F>> proj;  // sum -> X_i
};

template <class F>
SumDecomp<F> direct_sum(const AlgebraHandle<F>* h, const std::vector<const Module<F>*>& parts) {
  const F& f = h->alg->field;
  SumDecomp<F> out;
  out.sum = zero_module(h);
  int nv = h->alg->num_vertices();
  std::vector<int> offset(parts.size(), 0);
  for (int v = 0; v < nv; ++v) {
    int total = 0;
    for (const auto* p : parts) total += p->dims[v];
    out.sum.dims[v] = total;
  }
  for (int a = 0; a < h->alg->num_arrows(); ++a) {
    const Arrow& ar = h->alg->quiver.arrows[a];
    Mat<F> act(f, out.sum.dims[ar.tgt], out.sum.dims[ar.src]);
    int ro = 0, co = 0;
    for (const auto* p : parts) {
      for (int i = 0; i < p->dims[ar.tgt]; ++i)
        for (int j = 0; j < p->dims[ar.src]; ++j) act.at(ro + i, co + j) = p->act[a].at(i, j);
      ro += p->dims[ar.tgt];
      co += p->dims[ar.src];
    }
    out.sum.act[a] = act;
  }
  int np = static_cast<int>(parts.size());
  std::vector<std::vector<int>> offs(nv, std::vector<int>(np + 1, 0));
  for (int v = 0; v < nv; ++v)
    for (int k = 0; k < np; ++k) offs[v][k + 1] = offs[v][k] + parts[k]->dims[v];
  for (int k = 0; k < np; ++k) {
    ModuleMap<F> in, pr;
    for (int v = 0; v < nv; ++v) {
      Mat<F> mi(f, out.sum.dims[v], parts[k]->dims[v]);
      Mat<F> mp(f, parts[k]->dims[v], out.sum.dims[v]);
      for (int i = 0; i < parts[k]->dims[v]; ++i) {
        mi.at(offs[v][k] + i, i) = f.one();
        mp.at(i, offs[v][k] + i) = f.one();
      }
      in.comp.push_back(mi);
      pr.comp.push_back(mp);
    }
    out.inc.push_back(in);
    out.proj.push_back(pr);
  }
  return out;
}

// ---- hom spaces ----------------------------------------------------------

// Basis of the intertwiner space Hom(M, N), canonical (rref of the solution
// space with variables ordered vertex-major, row-major within a vertex).
template <class F>
struct HomSpace {
  int dim = 0;
  std::vector<ModuleMap<F>> basis;
  std::vector<int> var_offsets;            // per vertex start into flat coords
  int total_vars = 0;
  Subspace<F> space;                       // rref rows = flattened basis

  std::vector<typename F::Elt> flatten(const F& f, const ModuleMap<F>& m) const {
    std::vector<typename F::Elt> x;
    for (const auto& c : m.comp)
      for (const auto& e : c.a) x.push_back(e);
    (void)f;
    return x;
  }
};

template <class F>
HomSpace<F> hom_basis(const Module<F>& M, const Module<F>& N) {
  if (M.h != N.h) throw AlgebraMismatch();
  const F& f = M.field();
  const Algebra<F>& A = M.alg();
  int nv = A.num_vertices();
  HomSpace<F> hs;
  hs.var_offsets.assign(nv + 1, 0);
  for (int v = 0; v < nv; ++v)
    hs.var_offsets[v + 1] = hs.var_offsets[v] + N.dims[v] * M.dims[v];
  hs.total_vars = hs.var_offsets[nv];

  // equations: for each arrow a: v->w, for each (i < N.dims[w], j < M.dims[v]):
  //   sum_k f_w(i,k) M_a(k,j) - sum_k N_a(i,k) f_v(k,j) = 0
  int neq = 0;
  for (int a = 0; a < A.num_arrows(); ++a) {
    const Arrow& ar = A.quiver.arrows[a];
    neq += N.dims[ar.tgt] * M.dims[ar.src];
  }
  Mat<F> sys(f, neq, hs.total_vars);
  int row = 0;
  auto var = [&](int v, int i, int j) { return hs.var_offsets[v] + i * M.dims[v] + j; };
  for (int a = 0; a < A.num_arrows(); ++a) {
    const Arrow& ar = A.quiver.arrows[a];
    int v = ar.src, w = ar.tgt;
    for (int i = 0; i < N.dims[w]; ++i)
      for (int j = 0; j < M.dims[v]; ++j) {
        for (int k = 0; k < M.dims[w]; ++k)
          sys.at(row, var(w, i, k)) = f.add(sys.at(row, var(w, i, k)), M.act[a].at(k, j));
        for (int k = 0; k < N.dims[v]; ++k)
          sys.at(row, var(v, k, j)) = f.sub(sys.at(row, var(v, k, j)), N.act[a].at(i, k));
        ++row;
      }
  }
  hs.space = kernel_basis(sys);
  hs.dim = hs.space.dim();
  for (int b = 0; b < hs.dim; ++b) {
    ModuleMap<F> m;
    for (int v = 0; v < nv; ++v) {
      Mat<F> c(f, N.dims[v], M.dims[v]);
      for (int i = 0; i < N.dims[v]; ++i)
        for (int j = 0; j < M.dims[v]; ++j) c.at(i, j) = hs.space.basis.at(b, var(v, i, j));
      m.comp.push_back(c);
    }
    hs.basis.push_back(m);
  }
  return hs;
}

// Coordinates of a map in the rref hom basis (pivot read-off).
template <class F>
std::vector<typename F::Elt> hom_coords(const F& f, const HomSpace<F>& hs, const ModuleMap<F>& m) {
  std::vector<typename F::Elt> flat = hs.flatten(f, m);
  RrefResult<F> r = rref(hs.space.basis);  // already rref; recovers pivot cols
  std::vector<typename F::Elt> coords(hs.dim, f.zero());
  for (int i = 0; i < hs.dim; ++i) coords[i] = flat[r.pivot_cols[i]];
  // verify membership
  for (int j = 0; j < hs.total_vars; ++j) {
    typename F::Elt s = f.zero();
    for (int i = 0; i < hs.dim; ++i) s = f.add(s, f.mul(coords[i], hs.space.basis.at(i, j)));
    if (!f.eq(s, flat[j])) throw std::runtime_error("hom_coords: map not in hom space");
  }
  return coords;
}

template <class F>
ModuleMap<F> from_hom_coords(const F& f, const HomSpace<F>& hs, const Module<F>& M, const Module<F>& N,
                             const std::vector<typename F::Elt>& coords) {
  ModuleMap<F> m = zero_map(M, N);
  for (int b = 0; b < hs.dim; ++b) {
    if (f.is_zero(coords[b])) continue;
    m = add_maps(m, scale_map(f, hs.basis[b], coords[b]));
  }
  return m;
}

// ---- kernels / images / cokernels ---------------------------------------

// Submodule spanned by given per-vertex subspaces (must be action-closed).
template <class F>
struct SubmoduleResult {
  Module<F> mod;
  ModuleMap<F> incl;  // mod -> ambient
};

template <class F>
SubmoduleResult<F> submodule_from_subspaces(const Module<F>& M, const std::vector<Subspace<F>>& sub) {
  const F& f = M.field();
  const Algebra<F>& A = M.alg();
  SubmoduleResult<F> out;
  out.mod = zero_module(M.h);
  for (int v = 0; v < A.num_vertices(); ++v) out.mod.dims[v] = sub[v].dim();
  for (int a = 0; a < A.num_arrows(); ++a) {
    const Arrow& ar = A.quiver.arrows[a];
    // express action of a on sub-basis in sub-basis coords: solve B_w^T x = M_a * b
    Mat<F> act(f, out.mod.dims[ar.tgt], out.mod.dims[ar.src]);
    Mat<F> bw_t = sub[ar.tgt].basis.transposed();  // ambient x dim
    for (int j = 0; j < out.mod.dims[ar.src]; ++j) {
      std::vector<typename F::Elt> vec(M.dims[ar.src], f.zero());
      for (int c = 0; c < M.dims[ar.src]; ++c) vec[c] = sub[ar.src].basis.at(j, c);
      std::vector<typename F::Elt> img = mat_apply(M.act[a], vec);
      auto x = solve(bw_t, img);
      if (!x) throw std::runtime_error("submodule_from_subspaces: not action-closed");
      for (int i = 0; i < out.mod.dims[ar.tgt]; ++i) act.at(i, j) = (*x)[i];
    }
    out.mod.act[a] = act;
  }
  out.incl = ModuleMap<F>{};
  for (int v = 0; v < A.num_vertices(); ++v)
    out.incl.comp.push_back(sub[v].basis.transposed());
  return out;
}

template <class F>
SubmoduleResult<F> kernel_module(const Module<F>& M, const Module<F>& N, const ModuleMap<F>& f) {
  std::vector<Subspace<F>> sub;
  for (size_t v = 0; v < M.dims.size(); ++v) sub.push_back(kernel_basis(f.comp[v]));
  (void)N;
  return submodule_from_subspaces(M, sub);
}

template <class F>
SubmoduleResult<F> image_module(const Module<F>& M, const Module<F>& N, const ModuleMap<F>& f) {
  std::vector<Subspace<F>> sub;
  for (size_t v = 0; v < N.dims.size(); ++v) sub.push_back(image_basis(f.comp[v].transposed()));
  (void)M;
  return submodule_from_subspaces(N, sub);
}

template <class F>
struct QuotientResult {
  Module<F> mod;
  ModuleMap<F> proj;  // ambient -> mod
};

// Quotient of M by an action-closed collection of per-vertex subspaces.
template <class F>
QuotientResult<F> quotient_by_subspaces(const Module<F>& M, const std::vector<Subspace<F>>& sub) {
  const F& f = M.field();
  const Algebra<F>& A = M.alg();
  QuotientResult<F> out;
  out.mod = zero_module(M.h);
  std::vector<QuotientData<F>> qd;
  for (int v = 0; v < A.num_vertices(); ++v) {
    qd.push_back(quotient_basis(full_space(f, M.dims[v]), sub[v]));
    out.mod.dims[v] = qd[v].projection.rows;
  }
  for (int a = 0; a < A.num_arrows(); ++a) {
    const Arrow& ar = A.quiver.arrows[a];
    // action on quotient: proj_w * M_a * section_v^T
    out.mod.act[a] = qd[ar.tgt].projection * (M.act[a] * qd[ar.src].section.transposed());
  }
  out.proj = ModuleMap<F>{};
  for (int v = 0; v < A.num_vertices(); ++v) out.proj.comp.push_back(qd[v].projection);
  return out;
}

template <class F>
QuotientResult<F> cokernel_module(const Module<F>& M, const Module<F>& N, const ModuleMap<F>& f) {
  std::vector<Subspace<F>> sub;
  for (size_t v = 0; v < N.dims.size(); ++v) sub.push_back(image_basis(f.comp[v].transposed()));
  (void)M;
  return quotient_by_subspaces(N, sub);
}

// ---- top / radical / socle ----------------------------------------------

template <class F>
std::vector<Subspace<F>> radical_subspaces(const Module<F>& M) {
  const F& f = M.field();
  const Algebra<F>& A = M.alg();
  std::vector<Subspace<F>> sub;
  for (int v = 0; v < A.num_vertices(); ++v) {
    // sum of images of arrows into v
    Subspace<F> s{M.dims[v], Mat<F>(f, 0, M.dims[v])};
    for (int a = 0; a < A.num_arrows(); ++a)
      if (A.quiver.arrows[a].tgt == v) s = sum(s, image_basis(M.act[a].transposed()));
    sub.push_back(s);
  }
  return sub;
}

template <class F>
QuotientResult<F> top_module(const Module<F>& M) {
  return quotient_by_subspaces(M, radical_subspaces(M));
}

template <class F>
SubmoduleResult<F> radical_module(const Module<F>& M) {
  return submodule_from_subspaces(M, radical_subspaces(M));
}

template <class F>
SubmoduleResult<F> socle_module(const Module<F>& M) {
  const F& f = M.field();
  const Algebra<F>& A = M.alg();
  std::vector<Subspace<F>> sub;
  for (int v = 0; v < A.num_vertices(); ++v) {
    Subspace<F> s = full_space(f, M.dims[v]);
    for (int a = 0; a < A.num_arrows(); ++a)
      if (A.quiver.arrows[a].src == v) s = intersect(s, kernel_basis(M.act[a]));
    sub.push_back(s);
  }
  return submodule_from_subspaces(M, sub);
}

// ---- projective covers, envelopes, syzygies ------------------------------

// Map P_v -> M determined by the image of the idempotent basis vector e_v.
template <class F>
ModuleMap<F> projective_map_from_element(const Module<F>& P, int v, const Module<F>& M,
                                         const std::vector<typename F::Elt>& elem) {
  const F& f = M.field();
  const Algebra<F>& A = M.alg();
  // P must be projective_module(h, v); its basis at w = paths v->w (full cap).
  ModuleMap<F> out = zero_map(P, M);
  std::vector<std::vector<int>> basis_at(A.num_vertices());
  for (size_t i = 0; i < A.basis.size(); ++i)
    if (A.basis[i].source == v) basis_at[A.basis[i].target].push_back(static_cast<int>(i));
  for (int w = 0; w < A.num_vertices(); ++w) {
    for (int col = 0; col < P.dims[w]; ++col) {
      const Path& p = A.basis[basis_at[w][col]];
      std::vector<typename F::Elt> img = mat_apply(path_action(M, p), elem);
      for (int i = 0; i < M.dims[w]; ++i) out.comp[w].at(i, col) = img[i];
    }
  }
  return out;
}

template <class F>
struct CoverResult {
  Module<F> proj;                  // the covering projective (direct sum)
  std::vector<int> proj_vertices;  // vertex of each indecomposable block
  ModuleMap<F> map;                // proj -> M, epi
  std::vector<ModuleMap<F>> block_inc;   // P_{v_k} -> proj
  std::vector<ModuleMap<F>> block_proj;  // proj -> P_{v_k}
};

// Minimal projective cover built on top(M).
template <class F>
CoverResult<F> projective_cover(const Module<F>& M) {
  const F& f = M.field();
  const Algebra<F>& A = M.alg();
  QuotientResult<F> top = top_module(M);
  CoverResult<F> out;
  std::vector<Module<F>> blocks;
  std::vector<std::vector<typename F::Elt>> elems;
  for (int v = 0; v < A.num_vertices(); ++v) {
    // lift each top basis vector at v to M_v: rows of section used inside quotient_basis
    // top.proj.comp[v] is q x dim; pick representatives: solve proj * x = e_i
    for (int i = 0; i < top.mod.dims[v]; ++i) {
      std::vector<typename F::Elt> e(top.mod.dims[v], f.zero());
      e[i] = f.one();
      auto x = solve(top.proj.comp[v], e);
      if (!x) throw std::runtime_error("projective_cover: lift failed");
      out.proj_vertices.push_back(v);
      elems.push_back(*x);
    }
  }
  for (size_t k = 0; k < out.proj_vertices.size(); ++k)
    blocks.push_back(projective_module(M.h, out.proj_vertices[k]));
  std::vector<const Module<F>*> ptrs;
  for (auto& b : blocks) ptrs.push_back(&b);
  SumDecomp<F> sd = direct_sum(M.h, ptrs);
  out.proj = sd.sum;
  out.block_inc = sd.inc;
  out.block_proj = sd.proj;
  out.map = zero_map(out.proj, M);
  for (size_t k = 0; k < blocks.size(); ++k) {
    ModuleMap<F> mk = projective_map_from_element(blocks[k], out.proj_vertices[k], M, elems[k]);
    out.map = add_maps(out.map, compose_maps(sd.proj[k], mk));
  }
  // surjectivity check (guaranteed by the top construction)
  for (size_t v = 0; v < M.dims.size(); ++v)
    if (rank(out.map.comp[v]) != M.dims[v])
      throw std::runtime_error("projective_cover: not surjective");
  return out;
}

template <class F>
struct EnvelopeResult {
  Module<F> inj;
  std::vector<int> inj_vertices;
  ModuleMap<F> map;  // M -> inj, mono
  std::vector<ModuleMap<F>> block_inc;   // I_{v_k} -> inj
  std::vector<ModuleMap<F>> block_proj;  // inj -> I_{v_k}
};

template <class F>
EnvelopeResult<F> injective_envelope(const Module<F>& M) {
  Module<F> dm = dual_module(M);
  CoverResult<F> cover = projective_cover(dm);
  EnvelopeResult<F> out;
  out.inj = dual_module(cover.proj);
  out.inj_vertices = cover.proj_vertices;
  out.map = dual_map(cover.map);
  for (const auto& bp : cover.block_proj) out.block_inc.push_back(dual_map(bp));
  for (const auto& bi : cover.block_inc) out.block_proj.push_back(dual_map(bi));
  return out;
}

template <class F>
SubmoduleResult<F> syzygy(const Module<F>& M) {
  CoverResult<F> c = projective_cover(M);
  return kernel_module(c.proj, M, c.map);
}

template <class F>
QuotientResult<F> cosyzygy(const Module<F>& M) {
  EnvelopeResult<F> e = injective_envelope(M);
  return cokernel_module(M, e.inj, e.map);
}

}  // namespace qtilt

#endif
