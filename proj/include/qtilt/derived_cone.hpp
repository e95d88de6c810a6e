#ifndef QTILT_DERIVED_CONE_HPP
#define QTILT_DERIVED_CONE_HPP

#include "qtilt/derived.hpp"

namespace qtilt {

// ---- realization of window objects as complexes of projectives ----------------

template <class F>
struct WinRealization {
  PComplex<F> cx;
  struct Loc {
    int p1_term = -1, p1_off = 0, p1_cnt = 0;
    int p0_term = -1, p0_off = 0, p0_cnt = 0;
  };
  std::vector<Loc> locs;  // per part of the realized sum
};

template <class F>
WinRealization<F> realize_win(const DerivedWindow<F>& W, const SumObj& parts) {
  WinRealization<F> out;
  if (parts.parts.empty()) {
    out.cx = make_pcomplex<F>(W.h, 0, {{}});
    return out;
  }
  int qlo = 1 << 28, qhi = -(1 << 28);
  for (int p : parts.parts) {
    int d = W.deg_of(p);
    qlo = std::min(qlo, -d - 1);
    qhi = std::max(qhi, -d);
  }
  std::vector<std::vector<int>> verts(qhi - qlo + 1);
  out.locs.resize(parts.parts.size());
  // first pass: P1 blocks, second pass: P0 blocks (deterministic layout)
  for (size_t i = 0; i < parts.parts.size(); ++i) {
    int m = W.mod_of(parts.parts[i]), d = W.deg_of(parts.parts[i]);
    const auto& v1 = W.pd[m].pres.cover1.proj_vertices;
    int q = -d - 1 - qlo;
    out.locs[i].p1_term = q;
    out.locs[i].p1_off = static_cast<int>(verts[q].size());
    out.locs[i].p1_cnt = static_cast<int>(v1.size());
    for (int v : v1) verts[q].push_back(v);
  }
  for (size_t i = 0; i < parts.parts.size(); ++i) {
    int m = W.mod_of(parts.parts[i]), d = W.deg_of(parts.parts[i]);
    const auto& v0 = W.pd[m].pres.cover0.proj_vertices;
    int q = -d - qlo;
    out.locs[i].p0_term = q;
    out.locs[i].p0_off = static_cast<int>(verts[q].size());
    out.locs[i].p0_cnt = static_cast<int>(v0.size());
    for (int v : v0) verts[q].push_back(v);
  }
  out.cx = make_pcomplex<F>(W.h, qlo, verts);
  // differentials: per part, embed d_m between its block ranges
  for (size_t i = 0; i < parts.parts.size(); ++i) {
    int m = W.mod_of(parts.parts[i]);
    const auto& loc = out.locs[i];
    if (loc.p1_cnt == 0) continue;
    int q = loc.p1_term;  // d_m : term q -> term q+1
    const ModuleMap<F>& dm = W.pd[m].pres.d;
    for (int b = 0; b < loc.p1_cnt; ++b)
      for (int tb = 0; tb < loc.p0_cnt; ++tb) {
        ModuleMap<F> blk = compose_maps(compose_maps(W.pd[m].pres.cover1.block_inc[b], dm),
                                        W.pd[m].pres.cover0.block_proj[tb]);
        ModuleMap<F> emb = compose_maps(
            compose_maps(out.cx.term_proj[q][loc.p1_off + b], blk),
            out.cx.term_inc[q + 1][loc.p0_off + tb]);
        out.cx.diff[q] = add_maps(out.cx.diff[q], emb);
      }
  }
  return out;
}

// per-part inclusion/projection between the part's own realization blocks and
// the big complex, at P1 and P0 levels
template <class F>
ModuleMap<F> part_p0_inc(const DerivedWindow<F>& W, const WinRealization<F>& R, const SumObj& parts, int i) {
  int m = W.mod_of(parts.parts[i]);
  const auto& loc = R.locs[i];
  const Module<F>& p0 = W.pd[m].pres.cover0.proj;
  ModuleMap<F> out = zero_map(p0, R.cx.term_mods[loc.p0_term]);
  for (int b = 0; b < loc.p0_cnt; ++b)
    out = add_maps(out, compose_maps(W.pd[m].pres.cover0.block_proj[b],
                                     R.cx.term_inc[loc.p0_term][loc.p0_off + b]));
  return out;
}

template <class F>
ModuleMap<F> part_p0_proj(const DerivedWindow<F>& W, const WinRealization<F>& R, const SumObj& parts, int i) {
  int m = W.mod_of(parts.parts[i]);
  const auto& loc = R.locs[i];
  const Module<F>& p0 = W.pd[m].pres.cover0.proj;
  ModuleMap<F> out = zero_map(R.cx.term_mods[loc.p0_term], p0);
  for (int b = 0; b < loc.p0_cnt; ++b)
    out = add_maps(out, compose_maps(R.cx.term_proj[loc.p0_term][loc.p0_off + b],
                                     W.pd[m].pres.cover0.block_inc[b]));
  return out;
}

template <class F>
ModuleMap<F> part_p1_inc(const DerivedWindow<F>& W, const WinRealization<F>& R, const SumObj& parts, int i) {
  int m = W.mod_of(parts.parts[i]);
  const auto& loc = R.locs[i];
  const Module<F>& p1 = W.pd[m].pres.cover1.proj;
  ModuleMap<F> out = zero_map(p1, R.cx.term_mods[loc.p1_term]);
  for (int b = 0; b < loc.p1_cnt; ++b)
    out = add_maps(out, compose_maps(W.pd[m].pres.cover1.block_proj[b],
                                     R.cx.term_inc[loc.p1_term][loc.p1_off + b]));
  return out;
}

template <class F>
ModuleMap<F> part_p1_proj(const DerivedWindow<F>& W, const WinRealization<F>& R, const SumObj& parts, int i) {
  int m = W.mod_of(parts.parts[i]);
  const auto& loc = R.locs[i];
  const Module<F>& p1 = W.pd[m].pres.cover1.proj;
  ModuleMap<F> out = zero_map(R.cx.term_mods[loc.p1_term], p1);
  for (int b = 0; b < loc.p1_cnt; ++b)
    out = add_maps(out, compose_maps(R.cx.term_proj[loc.p1_term][loc.p1_off + b],
                                     W.pd[m].pres.cover1.block_inc[b]));
  return out;
}

// Chain realization of a window morphism (blockwise lifts).
template <class F>
ChainMap<F> chainify_win(const DerivedWindow<F>& W, const CatMor<F>& m, const WinRealization<F>& RA,
                         const WinRealization<F>& RB) {
  const F& f = W.h->alg->field;
  ChainMap<F> out = zero_chain_map(RA.cx, RB.cx);
  for (int t = 0; t < m.tgt.size(); ++t)
    for (int s = 0; s < m.src.size(); ++s) {
      int ms = W.mod_of(m.src.parts[s]), mt = W.mod_of(m.tgt.parts[t]);
      int slot = W.deg_of(m.tgt.parts[t]) - W.deg_of(m.src.parts[s]);
      const auto& coords = m.blocks[t][s];
      if (slot == 0) {
        for (size_t k = 0; k < coords.size(); ++k) {
          if (f.is_zero(coords[k])) continue;
          // f0 component
          ModuleMap<F> c0 = compose_maps(compose_maps(part_p0_proj(W, RA, m.src, s), W.lifts[ms][mt].f0[k]),
                                         part_p0_inc(W, RB, m.tgt, t));
          int q0 = RA.locs[s].p0_term;
          out.comp[q0] = add_maps(out.comp[q0], scale_map(f, c0, coords[k]));
          // f1 component
          if (RA.locs[s].p1_cnt > 0 && RB.locs[t].p1_cnt > 0) {
            ModuleMap<F> c1 = compose_maps(compose_maps(part_p1_proj(W, RA, m.src, s), W.lifts[ms][mt].f1[k]),
                                           part_p1_inc(W, RB, m.tgt, t));
            int q1 = RA.locs[s].p1_term;
            out.comp[q1] = add_maps(out.comp[q1], scale_map(f, c1, coords[k]));
          }
        }
      } else if (slot == 1) {
        for (size_t k = 0; k < coords.size(); ++k) {
          if (f.is_zero(coords[k])) continue;
          if (RA.locs[s].p1_cnt == 0) continue;
          ModuleMap<F> c = compose_maps(compose_maps(part_p1_proj(W, RA, m.src, s), W.lifts[ms][mt].exthat[k]),
                                        part_p0_inc(W, RB, m.tgt, t));
          int q1 = RA.locs[s].p1_term;  // equals RB.locs[t].p0_term
          out.comp[q1] = add_maps(out.comp[q1], scale_map(f, c, coords[k]));
        }
      } else if (!coords.empty()) {
        bool nonzero = false;
        for (const auto& c : coords)
          if (!f.is_zero(c)) nonzero = true;
        if (nonzero) throw std::runtime_error("chainify_win: unsupported degree offset");
      }
    }
  return out;
}

// Extract window coordinates of a chain map between realizations.
template <class F>
CatMor<F> declassify_win(const DerivedWindow<F>& W, const ChainMap<F>& phi, const SumObj& A,
                         const WinRealization<F>& RA, const SumObj& B, const WinRealization<F>& RB) {
  const F& f = W.h->alg->field;
  CatMor<F> out = zero_mor(W.cat, A, B);
  for (int t = 0; t < B.size(); ++t)
    for (int s = 0; s < A.size(); ++s) {
      int ms = W.mod_of(A.parts[s]), mt = W.mod_of(B.parts[t]);
      int slot = W.deg_of(B.parts[t]) - W.deg_of(A.parts[s]);
      if (slot == 0) {
        // induced map on the cokernels of the part resolutions
        int q0 = RA.locs[s].p0_term;
        int q_abs = RA.cx.lo_deg + q0;
        if (!RB.cx.has_deg(q_abs)) continue;
        ModuleMap<F> psi0 = compose_maps(compose_maps(part_p0_inc(W, RA, A, s), phi.comp[q0]),
                                         part_p0_proj(W, RB, B, t));
        auto mm = solve_factor_right(W.pd[ms].pres.cover0.proj, W.master(ms), W.master(mt),
                                     W.pd[ms].pres.cover0.map,
                                     compose_maps(psi0, W.pd[mt].pres.cover0.map));
        if (!mm) throw std::runtime_error("declassify_win: cokernel descent failed");
        out.blocks[t][s] = hom_coords(f, W.sk.homs[ms][mt], *mm);
      } else if (slot == 1) {
        if (RA.locs[s].p1_cnt == 0) continue;
        int q1 = RA.locs[s].p1_term;
        int q_abs = RA.cx.lo_deg + q1;
        if (!RB.cx.has_deg(q_abs)) continue;
        ModuleMap<F> psi = compose_maps(compose_maps(part_p1_inc(W, RA, A, s), phi.comp[q1]),
                                        part_p0_proj(W, RB, B, t));
        // class of pi_t ∘ psi ∘ cover1_inv
        ModuleMap<F> rep = compose_maps(compose_maps(W.pd[ms].cover1_inv, psi), W.pd[mt].pres.cover0.map);
        out.blocks[t][s] = W.ext[ms][mt].class_of(rep);
      }
      // other offsets: nothing to extract (must vanish up to homotopy)
    }
  return out;
}

// ---- cohomology and canonical splitting ----------------------------------------

template <class F>
struct Canonicalization {
  SumObj canon;           // window objects
  WinRealization<F> real; // realization of canon
  ChainMap<F> u;          // P(canon) -> C, quasi-isomorphism
  ChainMap<F> v;          // C -> P(canon), homotopy inverse
};

template <class F>
Canonicalization<F> canonicalize_complex(const DerivedWindow<F>& W, const PComplex<F>& C) {
  const F& f = W.h->alg->field;
  Canonicalization<F> out;

  struct Piece {
    int master = -1, deg = 0;  // window data
    Module<F> mod;             // the summand inside H
    ModuleMap<F> to_master, from_master;
    // embedding data built below
    int term = -1;
    ModuleMap<F> h_proj;  // K -> H -> piece (piece projection)
    SubmoduleResult<F> K; // kernel at the term
    QuotientResult<F> H;  // K -> H
    ModuleMap<F> piece_inc, piece_prj;  // piece <-> H
  };
  std::vector<Piece> pieces;

  for (int i = 0; i < C.len(); ++i) {
    int q = C.lo_deg + i;
    // K = ker(d^q) (whole term if last)
    SubmoduleResult<F> K;
    if (i + 1 < C.len())
      K = kernel_module(C.term_mods[i], C.term_mods[i + 1], C.diff[i]);
    else {
      std::vector<Subspace<F>> full;
      for (int v = 0; v < W.h->alg->num_vertices(); ++v)
        full.push_back(full_space(f, C.term_mods[i].dims[v]));
      K = submodule_from_subspaces(C.term_mods[i], full);
    }
    // image of d^{q-1} inside K
    ModuleMap<F> t_in = zero_map(zero_module(W.h), K.mod);
    QuotientResult<F> H;
    if (i > 0) {
      auto tk = solve_factor_left(C.term_mods[i - 1], K.mod, C.term_mods[i], K.incl, C.diff[i - 1]);
      if (!tk) throw std::runtime_error("canonicalize: boundary does not land in the kernel");
      H = cokernel_module(C.term_mods[i - 1], K.mod, *tk);
    } else {
      H = cokernel_module(zero_module(W.h), K.mod, zero_map(zero_module(W.h), K.mod));
    }
    if (H.mod.total_dim() == 0) continue;
    auto dec = decompose_with_maps(H.mod);
    for (auto& piece : dec) {
      Piece P;
      P.master = W.sk.find_iso(piece.mod);
      if (P.master < 0) throw std::runtime_error("canonicalize: cohomology summand unrecognized");
      P.deg = -q;
      if (!W.deg_in_window(P.deg)) throw WindowExceeded("canonicalize: cohomology left the window");
      P.mod = piece.mod;
      auto iso = find_isomorphism(piece.mod, W.master(P.master));
      P.to_master = *iso;
      P.from_master = map_inverse(*iso);
      P.term = i;
      P.K = K;
      P.H = H;
      P.piece_inc = piece.inc;
      P.piece_prj = piece.prj;
      pieces.push_back(P);
    }
  }

  for (auto& P : pieces) out.canon.parts.push_back(W.windex(P.master, P.deg));
  out.real = realize_win(W, out.canon);

  // u: P(canon) -> C, lifting each summand's cover through the kernel
  out.u = zero_chain_map(out.real.cx, C);
  for (size_t i = 0; i < pieces.size(); ++i) {
    Piece& P = pieces[i];
    int m = P.master;
    // psi0: P0(master) -> K with (K ->> H ->> piece ->(from) ...) hitting cover
    // target composite: P0 -> master -> piece -> H
    ModuleMap<F> into_H = compose_maps(compose_maps(W.pd[m].pres.cover0.map, P.from_master), P.piece_inc);
    auto psiK = solve_factor_left(W.pd[m].pres.cover0.proj, P.K.mod, P.H.mod, P.H.proj, into_H);
    if (!psiK) throw std::runtime_error("canonicalize: section lift failed");
    ModuleMap<F> psi0 = compose_maps(*psiK, P.K.incl);  // P0 -> C^term
    // place into u at the P0 term
    int q0 = out.real.locs[i].p0_term;
    ModuleMap<F> emb = compose_maps(part_p0_inc(W, out.real, out.canon, static_cast<int>(i)),
                                    zero_map(out.real.cx.term_mods[q0], C.term_mods[P.term]));
    (void)emb;
    ModuleMap<F> c0 = compose_maps(part_p0_proj(W, out.real, out.canon, static_cast<int>(i)), psi0);
    out.u.comp[q0] = add_maps(out.u.comp[q0], c0);
    // psi1: P1(master) -> C^{term-1} with d∘psi1 = psi0∘d_master
    if (W.pd[m].pres.syz.mod.total_dim() > 0) {
      ModuleMap<F> rhs = compose_maps(W.pd[m].pres.d, psi0);  // P1 -> C^term
      if (P.term == 0) {
        // no boundary available; rhs must vanish
        if (!map_is_zero(rhs)) throw std::runtime_error("canonicalize: boundary lift missing");
      } else {
        auto psi1 = solve_factor_left(W.pd[m].pres.cover1.proj, C.term_mods[P.term - 1], C.term_mods[P.term],
                                      C.diff[P.term - 1], rhs);
        if (!psi1) throw std::runtime_error("canonicalize: boundary lift failed");
        int q1 = out.real.locs[i].p1_term;
        ModuleMap<F> c1 = compose_maps(part_p1_proj(W, out.real, out.canon, static_cast<int>(i)), *psi1);
        out.u.comp[q1] = add_maps(out.u.comp[q1], c1);
      }
    }
  }

  // v: homotopy inverse, solved linearly from [v∘u] = [id], [u∘v] = [id]
  ChainHomSpace<F> vs = chain_hom_space(C, out.real.cx);
  ChainHomSpace<F> endP = chain_hom_space(out.real.cx, out.real.cx);
  ChainHomSpace<F> endC = chain_hom_space(C, C);
  int nv = vs.chain_space.dim();
  // unknown v = sum x_b * basis_b over the chain space of (C -> canon)
  std::vector<ChainMap<F>> vbasis;
  for (int b = 0; b < nv; ++b) {
    ChainMap<F> cm = zero_chain_map(C, out.real.cx);
    for (int i = 0; i < C.len(); ++i) {
      int q = C.lo_deg + i;
      if (!out.real.cx.has_deg(q)) continue;
      const HomSpace<F>& dh = vs.degree_homs[i];
      std::vector<typename F::Elt> flat(dh.total_vars);
      for (int c = 0; c < dh.total_vars; ++c) flat[c] = vs.chain_space.basis.at(b, vs.offsets[i] + c);
      // rebuild the module map from its flattened ambient coordinates
      ModuleMap<F> mm = zero_map(C.term_mods[i], out.real.cx.term(q));
      int pos = 0;
      for (size_t v = 0; v < mm.comp.size(); ++v)
        for (int r = 0; r < mm.comp[v].rows; ++r)
          for (int c2 = 0; c2 < mm.comp[v].cols; ++c2) mm.comp[v].at(r, c2) = flat[pos++];
      cm.comp[i] = mm;
    }
    vbasis.push_back(cm);
  }
  // conditions in the class spaces
  auto class_coords_P = [&](const ChainMap<F>& cm) {
    auto flat = flatten_chain(f, endP, out.real.cx, out.real.cx, cm);
    return mat_apply(endP.classes.projection, flat);
  };
  auto class_coords_C = [&](const ChainMap<F>& cm) {
    auto flat = flatten_chain(f, endC, C, C, cm);
    return mat_apply(endC.classes.projection, flat);
  };
  int rowsP = endP.classes.projection.rows, rowsC = endC.classes.projection.rows;
  Mat<F> sys(f, rowsP + rowsC, nv);
  for (int b = 0; b < nv; ++b) {
    ChainMap<F> vu = compose_chain(out.real.cx, C, out.real.cx, out.u, vbasis[b]);
    auto cp = class_coords_P(vu);
    for (int r = 0; r < rowsP; ++r) sys.at(r, b) = cp[r];
    ChainMap<F> uv = compose_chain(C, out.real.cx, C, vbasis[b], out.u);
    auto cc = class_coords_C(uv);
    for (int r = 0; r < rowsC; ++r) sys.at(rowsP + r, b) = cc[r];
  }
  ChainMap<F> idP = zero_chain_map(out.real.cx, out.real.cx);
  for (int i = 0; i < out.real.cx.len(); ++i) idP.comp[i] = identity_map(out.real.cx.term_mods[i]);
  ChainMap<F> idC = zero_chain_map(C, C);
  for (int i = 0; i < C.len(); ++i) idC.comp[i] = identity_map(C.term_mods[i]);
  std::vector<typename F::Elt> rhs = class_coords_P(idP);
  auto rhs2 = class_coords_C(idC);
  rhs.insert(rhs.end(), rhs2.begin(), rhs2.end());
  auto sol = solve(sys, rhs);
  if (!sol) throw std::runtime_error("canonicalize: homotopy inverse not found");
  out.v = zero_chain_map(C, out.real.cx);
  for (int b = 0; b < nv; ++b) {
    if (f.is_zero((*sol)[b])) continue;
    for (int i = 0; i < C.len(); ++i)
      out.v.comp[i] = add_maps(out.v.comp[i], scale_map(f, vbasis[b].comp[i], (*sol)[b]));
  }
  return out;
}

// ---- the cone oracle -----------------------------------------------------------

template <class F>
Triangle<F> window_cone(const DerivedWindow<F>& W, const CatMor<F>& fm) {
  WinRealization<F> RA = realize_win(W, fm.src);
  WinRealization<F> RB = realize_win(W, fm.tgt);
  ChainMap<F> phi = chainify_win(W, fm, RA, RB);
  MappingCone<F> mc = mapping_cone(RA.cx, RB.cx, phi);
  Canonicalization<F> canon = canonicalize_complex(W, mc.cone);

  // shifted source and its realization (blockwise identical, degrees bumped)
  SumObj shifted;
  for (int p : fm.src.parts) {
    int m = W.mod_of(p), d = W.deg_of(p);
    if (!W.deg_in_window(d + 1)) throw WindowExceeded("window_cone: shifted source leaves the window");
    shifted.parts.push_back(W.windex(m, d + 1));
  }
  WinRealization<F> RS = realize_win(W, shifted);

  // g = declassify(v ∘ incl), h = declassify(proj ∘ u)
  ChainMap<F> g_chain = compose_chain(RB.cx, mc.cone, canon.real.cx, mc.incl, canon.v);
  CatMor<F> g = declassify_win(W, g_chain, fm.tgt, RB, canon.canon, canon.real);
  // mc.proj: cone -> A[1]; align it with the realization of the shifted source:
  // A[1] has the same terms as RA with degrees shifted by -1, which is exactly
  // RS's layout (realize_win produces identical block orders for shifted parts)
  ChainMap<F> h_chain = compose_chain(canon.real.cx, mc.cone, RS.cx, canon.u, mc.proj);
  CatMor<F> h = declassify_win(W, h_chain, canon.canon, canon.real, shifted, RS);

  Triangle<F> out;
  out.f = fm;
  out.g = g;
  out.h = h;
  return out;
}

}  // namespace qtilt

#endif
