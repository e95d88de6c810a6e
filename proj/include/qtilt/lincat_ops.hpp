#ifndef QTILT_LINCAT_OPS_HPP
#define QTILT_LINCAT_OPS_HPP

#include <functional>
#include <optional>
#include <sstream>

#include "qtilt/lincat.hpp"

namespace qtilt {

// ---- endomorphism algebras of objects, radical of the category ---------------

template <class F>
FDAlgebra<F> end_algebra_of_object(const LinCategory<F>& C, int x) {
  const F& f = C.field;
  FDAlgebra<F> A;
  A.field = f;
  A.dim = C.hom_dim[x][x];
  for (int i = 0; i < A.dim; ++i) {
    Mat<F> li(f, A.dim, A.dim);
    for (int j = 0; j < A.dim; ++j) {
      std::vector<typename F::Elt> bi(A.dim, f.zero()), bj(A.dim, f.zero());
      bi[i] = f.one();
      bj[j] = f.one();
      // product b_i * b_j := b_i ∘ b_j (apply b_j first)
      auto pc = C.compose_coords(x, x, x, bj, bi);
      for (int k = 0; k < A.dim; ++k) li.at(k, j) = pc[k];
    }
    A.lmul.push_back(li);
  }
  A.unit = C.id_coords[x];
  return A;
}

// rad(X,Y): all of Hom for X != Y; the radical of End(X) on the diagonal.
template <class F>
Subspace<F> cat_radical(const LinCategory<F>& C, int x, int y) {
  const F& f = C.field;
  if (x != y) return full_space(f, C.hom_dim[x][y]);
  FDAlgebra<F> E = end_algebra_of_object(C, x);
  return algebra_radical(E);
}

template <class F>
struct ArQuiver {
  std::vector<std::string> nodes;
  std::vector<std::tuple<int, int, int>> edges;  // (src, tgt, multiplicity)
};

// Arrows = basis of rad/rad^2 between indecomposables.
template <class F>
ArQuiver<F> radical_and_ar_quiver(const LinCategory<F>& C) {
  const F& f = C.field;
  int n = C.n();
  std::vector<std::vector<Subspace<F>>> rad(n, std::vector<Subspace<F>>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rad[i][j] = cat_radical(C, i, j);
  ArQuiver<F> out;
  out.nodes = C.objects;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int d = C.hom_dim[i][j];
      if (d == 0 || rad[i][j].dim() == 0) continue;
      // rad^2(i,j) = sum over k of rad(i,k)∘rad(k,j)
      std::vector<std::vector<typename F::Elt>> rows;
      for (int k = 0; k < n; ++k) {
        const Subspace<F>& r1 = rad[i][k];
        const Subspace<F>& r2 = rad[k][j];
        for (int p = 0; p < r1.dim(); ++p)
          for (int q = 0; q < r2.dim(); ++q) {
            std::vector<typename F::Elt> fp(C.hom_dim[i][k]);
            for (int t = 0; t < C.hom_dim[i][k]; ++t) fp[t] = r1.basis.at(p, t);
            std::vector<typename F::Elt> gq(C.hom_dim[k][j]);
            for (int t = 0; t < C.hom_dim[k][j]; ++t) gq[t] = r2.basis.at(q, t);
            rows.push_back(C.compose_coords(i, k, j, fp, gq));
          }
      }
      Mat<F> rmat(f, static_cast<int>(rows.size()), d);
      for (size_t r = 0; r < rows.size(); ++r)
        for (int t = 0; t < d; ++t) rmat.at(static_cast<int>(r), t) = rows[r][t];
      Subspace<F> rad2 = intersect(make_subspace(rmat), rad[i][j]);
      // rad2 ⊆ rad automatically; intersect keeps ambient bookkeeping honest
      int mult = rad[i][j].dim() - rad2.dim();
      if (mult > 0) out.edges.push_back({i, j, mult});
    }
  return out;
}

template <class F>
std::string ar_quiver_dot(const ArQuiver<F>& q, const std::string& name = "ar_quiver") {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (size_t i = 0; i < q.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << q.nodes[i] << "\"];\n";
  for (auto& [s, t, m] : q.edges)
    for (int k = 0; k < m; ++k) os << "  n" << s << " -> n" << t << ";\n";
  os << "}\n";
  return os.str();
}

// Unlabeled digraph isomorphism by brute-force permutation (small quivers).
template <class F>
bool ar_quivers_isomorphic(const ArQuiver<F>& a, const ArQuiver<F>& b) {
  int n = static_cast<int>(a.nodes.size());
  if (n != static_cast<int>(b.nodes.size())) return false;
  auto adj = [&](const ArQuiver<F>& q) {
    std::vector<std::vector<int>> m(q.nodes.size(), std::vector<int>(q.nodes.size(), 0));
    for (auto& [s, t, mult] : q.edges) m[s][t] = mult;
    return m;
  };
  auto ma = adj(a), mb = adj(b);
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        if (ma[i][j] != mb[perm[i]][perm[j]]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ---- kernel / cokernel search -------------------------------------------------

struct NotFoundWithinBound : std::runtime_error {
  explicit NotFoundWithinBound(const std::string& m) : std::runtime_error("NotFoundWithinBound: " + m) {}
};

template <class F>
struct KernelCertificate {
  SumObj kernel_obj;
  CatMor<F> map;  // kernel -> src of f (or tgt -> cokernel for the dual)
  std::vector<std::string> checks;
};

namespace detail {

// Multisets of object indices with bounded multiplicity, graded by size.
inline std::vector<std::vector<int>> graded_multisets(int n_objects, int mult_bound, int max_total) {
  std::vector<std::vector<int>> out;
  out.push_back({});
  for (int total = 1; total <= max_total; ++total) {
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int obj, int left) {
      if (left == 0) {
        out.push_back(cur);
        return;
      }
      if (obj >= n_objects) return;
      for (int take = std::min(left, mult_bound); take >= 0; --take) {
        for (int t = 0; t < take; ++t) cur.push_back(obj);
        rec(obj + 1, left - take);
        for (int t = 0; t < take; ++t) cur.pop_back();
      }
    };
    rec(0, total);
  }
  return out;
}

}  // namespace detail

// Search for a kernel of f among direct sums with per-object multiplicity
// <= mult_bound, in graded order so the minimal kernel comes first.
// A candidate map k: K -> src is accepted when f∘k = 0 and, for every
// indecomposable W, composing with k is a bijection from Hom(W,K) onto
// ker(Hom(W,f)). "Not found" is explicitly inconclusive.
template <class F>
std::optional<KernelCertificate<F>> kernel_search(const LinCategory<F>& C, const CatMor<F>& fm,
                                                  int mult_bound, long candidate_cap = 200000) {
  const F& f = C.field;
  int n = C.n();
  // target profile: for each W, dim ker(Hom(W, f))
  std::vector<int> profile(n, 0);
  std::vector<Subspace<F>> ker_spaces(n);
  for (int w = 0; w < n; ++w) {
    SumObj W{{w}};
    auto dom = sum_hom_basis(C, W, fm.src);
    int cod = sum_hom_dim(C, W, fm.tgt);
    Mat<F> m(f, cod, static_cast<int>(dom.size()));
    for (size_t c = 0; c < dom.size(); ++c) {
      auto img = mor_flatten(C, compose_mors(C, dom[c], fm));
      for (int r = 0; r < cod; ++r) m.at(r, static_cast<int>(c)) = img[r];
    }
    ker_spaces[w] = kernel_basis(m);
    profile[w] = ker_spaces[w].dim();
  }

  int max_total = mult_bound * n;
  auto candidates = detail::graded_multisets(n, mult_bound, max_total);
  long tried = 0;
  for (const auto& cand : candidates) {
    if (++tried > candidate_cap) break;
    SumObj K{cand};
    bool profile_ok = true;
    for (int w = 0; w < n && profile_ok; ++w)
      if (sum_hom_dim(C, SumObj{{w}}, K) != profile[w]) profile_ok = false;
    if (!profile_ok) continue;

    // candidate maps k with f∘k = 0
    auto kbasis = sum_hom_basis(C, K, fm.src);
    int cod = sum_hom_dim(C, K, fm.tgt);
    Mat<F> m(f, cod, static_cast<int>(kbasis.size()));
    for (size_t c = 0; c < kbasis.size(); ++c) {
      auto img = mor_flatten(C, compose_mors(C, kbasis[c], fm));
      for (int r = 0; r < cod; ++r) m.at(r, static_cast<int>(c)) = img[r];
    }
    Subspace<F> V = kernel_basis(m);
    if (V.dim() == 0 && K.size() > 0) continue;

    auto make_k = [&](const std::vector<typename F::Elt>& coords) {
      CatMor<F> k = zero_mor(C, K, fm.src);
      for (int i = 0; i < static_cast<int>(kbasis.size()); ++i)
        if (!f.is_zero(coords[i])) k = add_mors(C, k, scale_mor(C, kbasis[i], coords[i]));
      return k;
    };
    auto universal = [&](const CatMor<F>& k) {
      for (int w = 0; w < n; ++w) {
        SumObj W{{w}};
        auto dom = sum_hom_basis(C, W, K);
        if (static_cast<int>(dom.size()) != profile[w]) return false;
        if (dom.empty()) continue;
        // matrix of (k∘-): Hom(W,K) -> Hom(W,src); must be injective with
        // image equal to ker(Hom(W,f))
        int cd = sum_hom_dim(C, W, fm.src);
        Mat<F> km(f, static_cast<int>(dom.size()), cd);
        for (size_t c = 0; c < dom.size(); ++c) {
          auto img = mor_flatten(C, compose_mors(C, dom[c], k));
          for (int r = 0; r < cd; ++r) km.at(static_cast<int>(c), r) = img[r];
        }
        Subspace<F> im = make_subspace(km);
        if (im.dim() != profile[w]) return false;  // injectivity + right size
        if (!contains(ker_spaces[w], im) || !contains(im, ker_spaces[w])) return false;
      }
      return true;
    };

    if (K.size() == 0) {
      CatMor<F> k = zero_mor(C, K, fm.src);
      if (universal(k)) {
        KernelCertificate<F> cert;
        cert.kernel_obj = K;
        cert.map = k;
        cert.checks.push_back("kernel is the zero object");
        return cert;
      }
      continue;
    }

    // deterministic grid over V: single basis vectors, then small combos
    int vd = V.dim();
    long grid = static_cast<long>(sum_hom_dim(C, K, fm.src)) + 2;
    if (f.characteristic() > 0) grid = std::min<long>(grid, f.characteristic());
    std::vector<long> idx(vd, 0);
    long evals = 0, eval_cap = 4000;
    while (true) {
      bool nonzero = false;
      for (long v : idx)
        if (v) nonzero = true;
      if (nonzero) {
        std::vector<typename F::Elt> coords(kbasis.size(), f.zero());
        for (int b = 0; b < vd; ++b) {
          if (idx[b] == 0) continue;
          for (size_t c = 0; c < kbasis.size(); ++c)
            coords[c] = f.add(coords[c], f.mul(f.from_int(idx[b]), V.basis.at(b, static_cast<int>(c))));
        }
        CatMor<F> k = make_k(coords);
        if (universal(k)) {
          KernelCertificate<F> cert;
          cert.kernel_obj = K;
          cert.map = k;
          cert.checks.push_back("universal property replayed over all indecomposables");
          return cert;
        }
      }
      if (++evals >= eval_cap) break;
      int b = 0;
      while (b < vd) {
        if (++idx[b] < grid) break;
        idx[b] = 0;
        ++b;
      }
      if (b == vd) break;
    }
  }
  return std::nullopt;
}

// Dual search: cokernel of f as a kernel in the opposite category; realized
// directly to keep the certificate readable.
template <class F>
std::optional<KernelCertificate<F>> cokernel_search(const LinCategory<F>& C, const CatMor<F>& fm,
                                                    int mult_bound, long candidate_cap = 200000) {
  const F& f = C.field;
  int n = C.n();
  std::vector<int> profile(n, 0);
  std::vector<Subspace<F>> ker_spaces(n);
  for (int w = 0; w < n; ++w) {
    SumObj W{{w}};
    auto dom = sum_hom_basis(C, fm.tgt, W);
    int cod = sum_hom_dim(C, fm.src, W);
    Mat<F> m(f, cod, static_cast<int>(dom.size()));
    for (size_t c = 0; c < dom.size(); ++c) {
      auto img = mor_flatten(C, compose_mors(C, fm, dom[c]));
      for (int r = 0; r < cod; ++r) m.at(r, static_cast<int>(c)) = img[r];
    }
    ker_spaces[w] = kernel_basis(m);
    profile[w] = ker_spaces[w].dim();
  }
  int max_total = mult_bound * n;
  auto candidates = detail::graded_multisets(n, mult_bound, max_total);
  long tried = 0;
  for (const auto& cand : candidates) {
    if (++tried > candidate_cap) break;
    SumObj Q{cand};
    bool profile_ok = true;
    for (int w = 0; w < n && profile_ok; ++w)
      if (sum_hom_dim(C, Q, SumObj{{w}}) != profile[w]) profile_ok = false;
    if (!profile_ok) continue;

    auto qbasis = sum_hom_basis(C, fm.tgt, Q);
    int cod = sum_hom_dim(C, fm.src, Q);
    Mat<F> m(f, cod, static_cast<int>(qbasis.size()));
    for (size_t c = 0; c < qbasis.size(); ++c) {
      auto img = mor_flatten(C, compose_mors(C, fm, qbasis[c]));
      for (int r = 0; r < cod; ++r) m.at(r, static_cast<int>(c)) = img[r];
    }
    Subspace<F> V = kernel_basis(m);
    if (V.dim() == 0 && Q.size() > 0) continue;

    auto make_q = [&](const std::vector<typename F::Elt>& coords) {
      CatMor<F> q = zero_mor(C, fm.tgt, Q);
      for (int i = 0; i < static_cast<int>(qbasis.size()); ++i)
        if (!f.is_zero(coords[i])) q = add_mors(C, q, scale_mor(C, qbasis[i], coords[i]));
      return q;
    };
    auto universal = [&](const CatMor<F>& q) {
      for (int w = 0; w < n; ++w) {
        SumObj W{{w}};
        auto dom = sum_hom_basis(C, Q, W);
        if (static_cast<int>(dom.size()) != profile[w]) return false;
        if (dom.empty()) continue;
        int cd = sum_hom_dim(C, fm.tgt, W);
        Mat<F> qm(f, static_cast<int>(dom.size()), cd);
        for (size_t c = 0; c < dom.size(); ++c) {
          auto img = mor_flatten(C, compose_mors(C, q, dom[c]));
          for (int r = 0; r < cd; ++r) qm.at(static_cast<int>(c), r) = img[r];
        }
        Subspace<F> im = make_subspace(qm);
        if (im.dim() != profile[w]) return false;
        if (!contains(ker_spaces[w], im) || !contains(im, ker_spaces[w])) return false;
      }
      return true;
    };

    if (Q.size() == 0) {
      CatMor<F> q = zero_mor(C, fm.tgt, Q);
      if (universal(q)) {
        KernelCertificate<F> cert;
        cert.kernel_obj = Q;
        cert.map = q;
        cert.checks.push_back("cokernel is the zero object");
        return cert;
      }
      continue;
    }

    int vd = V.dim();
    long grid = static_cast<long>(sum_hom_dim(C, fm.tgt, Q)) + 2;
    if (f.characteristic() > 0) grid = std::min<long>(grid, f.characteristic());
    std::vector<long> idx(vd, 0);
    long evals = 0, eval_cap = 4000;
    while (true) {
      bool nonzero = false;
      for (long v : idx)
        if (v) nonzero = true;
      if (nonzero) {
        std::vector<typename F::Elt> coords(qbasis.size(), f.zero());
        for (int b = 0; b < vd; ++b) {
          if (idx[b] == 0) continue;
          for (size_t c = 0; c < qbasis.size(); ++c)
            coords[c] = f.add(coords[c], f.mul(f.from_int(idx[b]), V.basis.at(b, static_cast<int>(c))));
        }
        CatMor<F> q = make_q(coords);
        if (universal(q)) {
          KernelCertificate<F> cert;
          cert.kernel_obj = Q;
          cert.map = q;
          cert.checks.push_back("universal property replayed over all indecomposables");
          return cert;
        }
      }
      if (++evals >= eval_cap) break;
      int b = 0;
      while (b < vd) {
        if (++idx[b] < grid) break;
        idx[b] = 0;
        ++b;
      }
      if (b == vd) break;
    }
  }
  return std::nullopt;
}

// ---- linear functors -----------------------------------------------------------

template <class F>
struct LinFunctor {
  std::vector<int> obj;                              // object map
  std::map<std::pair<int, int>, Mat<F>> hom;         // coordinate matrices

  const Mat<F>& hom_mat(int i, int j) const { return hom.at({i, j}); }
};

template <class F>
void verify_functor(const LinCategory<F>& C, const LinCategory<F>& D, const LinFunctor<F>& G) {
  const F& f = C.field;
  int n = C.n();
  for (int i = 0; i < n; ++i) {
    auto idi = mat_apply(G.hom_mat(i, i), C.id_coords[i]);
    const auto& idd = D.id_coords[G.obj[i]];
    for (size_t k = 0; k < idi.size(); ++k)
      if (!f.eq(idi[k], idd[k])) throw std::runtime_error("functor does not preserve identities");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (C.hom_dim[i][j] == 0) continue;
      for (int k = 0; k < n; ++k) {
        if (C.hom_dim[j][k] == 0) continue;
        for (int p = 0; p < C.hom_dim[i][j]; ++p)
          for (int q = 0; q < C.hom_dim[j][k]; ++q) {
            std::vector<typename F::Elt> fp(C.hom_dim[i][j], f.zero());
            fp[p] = f.one();
            std::vector<typename F::Elt> gq(C.hom_dim[j][k], f.zero());
            gq[q] = f.one();
            auto lhs = mat_apply(G.hom_mat(i, k), C.compose_coords(i, j, k, fp, gq));
            auto rhs = D.compose_coords(G.obj[i], G.obj[j], G.obj[k], mat_apply(G.hom_mat(i, j), fp),
                                        mat_apply(G.hom_mat(j, k), gq));
            for (size_t r = 0; r < lhs.size(); ++r)
              if (!f.eq(lhs[r], rhs[r])) throw std::runtime_error("functor does not preserve composition");
          }
      }
    }
}

template <class F>
LinFunctor<F> functor_compose(const LinCategory<F>& C, const LinFunctor<F>& G1, const LinFunctor<F>& G2) {
  // G2 after G1
  LinFunctor<F> r;
  int n = C.n();
  r.obj.resize(n);
  for (int i = 0; i < n; ++i) r.obj[i] = G2.obj[G1.obj[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.hom[{i, j}] = G2.hom_mat(G1.obj[i], G1.obj[j]) * G1.hom_mat(i, j);
  return r;
}

template <class F>
LinFunctor<F> functor_inverse(const LinCategory<F>& C, const LinFunctor<F>& G) {
  LinFunctor<F> r;
  int n = C.n();
  r.obj.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (G.obj[i] < 0 || G.obj[i] >= n || r.obj[G.obj[i]] != -1)
      throw std::runtime_error("functor_inverse: object map is not a bijection");
    r.obj[G.obj[i]] = i;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.hom[{G.obj[i], G.obj[j]}] = inverse(G.hom_mat(i, j));
  return r;
}

// Image of a morphism under a functor.
template <class F>
CatMor<F> functor_apply(const LinCategory<F>& D, const LinFunctor<F>& G, const CatMor<F>& m) {
  SumObj src, tgt;
  for (int p : m.src.parts) src.parts.push_back(G.obj[p]);
  for (int p : m.tgt.parts) tgt.parts.push_back(G.obj[p]);
  CatMor<F> r = zero_mor(D, src, tgt);
  for (int t = 0; t < tgt.size(); ++t)
    for (int s = 0; s < src.size(); ++s)
      r.blocks[t][s] = mat_apply(G.hom_mat(m.src.parts[s], m.tgt.parts[t]), m.blocks[t][s]);
  return r;
}

}  // namespace qtilt

#endif
