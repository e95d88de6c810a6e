#ifndef QTILT_MAT_HPP
#define QTILT_MAT_HPP

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtilt/field.hpp"

namespace qtilt {

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& m) : std::runtime_error("DimensionMismatch: " + m) {}
};
struct NotASubspace : std::runtime_error {
  explicit NotASubspace(const std::string& m) : std::runtime_error("NotASubspace: " + m) {}
};

// Dense matrix over an exact field. Row-major. Deterministic throughout:
// pivoting always picks the leftmost pivot column and the first nonzero row,
// so every derived basis is reproducible byte for byte.
template <class F>
struct Mat {
  using K = typename F::Elt;

  F field;
  int rows = 0, cols = 0;
  std::vector<K> a;  // rows*cols

  Mat() : field(F{}) {}
  explicit Mat(const F& f) : field(f) {}
  Mat(const F& f, int r, int c) : field(f), rows(r), cols(c), a(static_cast<size_t>(r) * c, f.zero()) {}

  static Mat zero(const F& f, int r, int c) { return Mat(f, r, c); }
  static Mat identity(const F& f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  K& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const K& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool is_zero() const {
    for (const K& x : a)
      if (!field.is_zero(x)) return false;
    return true;
  }

  bool operator==(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (!field.eq(a[i], o.a[i])) return false;
    return true;
  }
  bool operator!=(const Mat& o) const { return !(*this == o); }

  Mat operator*(const Mat& o) const {
    if (cols != o.rows) throw DimensionMismatch("mat mul " + shape() + " * " + o.shape());
    Mat r(field, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const K& x = at(i, k);
        if (field.is_zero(x)) continue;
        for (int j = 0; j < o.cols; ++j)
          r.at(i, j) = field.add(r.at(i, j), field.mul(x, o.at(k, j)));
      }
    return r;
  }
  Mat operator+(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw DimensionMismatch("mat add");
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = field.add(r.a[i], o.a[i]);
    return r;
  }
  Mat operator-(const Mat& o) const {
    if (rows != o.rows || cols != o.cols) throw DimensionMismatch("mat sub");
    Mat r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] = field.sub(r.a[i], o.a[i]);
    return r;
  }
  Mat scaled(const K& c) const {
    Mat r = *this;
    for (K& x : r.a) x = field.mul(x, c);
    return r;
  }
  Mat negated() const {
    Mat r = *this;
    for (K& x : r.a) x = field.neg(x);
    return r;
  }

  Mat transposed() const {
    Mat r(field, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  std::string shape() const { return std::to_string(rows) + "x" + std::to_string(cols); }

  std::string to_string() const {
    std::string s;
    for (int i = 0; i < rows; ++i) {
      s += "[";
      for (int j = 0; j < cols; ++j) {
        if (j) s += ", ";
        s += field.to_string(at(i, j));
      }
      s += "]\n";
    }
    return s;
  }
};

template <class F>
struct RrefResult {
  Mat<F> mat;
  int rank = 0;
  std::vector<int> pivot_cols;
};

// Reduced row-echelon form. Leftmost pivot, first nonzero row.
template <class F>
RrefResult<F> rref(const Mat<F>& m) {
  const F& f = m.field;
  Mat<F> r = m;
  std::vector<int> pivots;
  int lead = 0;
  for (int col = 0; col < r.cols && lead < r.rows; ++col) {
    int piv = -1;
    for (int i = lead; i < r.rows; ++i)
      if (!f.is_zero(r.at(i, col))) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != lead)
      for (int j = 0; j < r.cols; ++j) std::swap(r.at(piv, j), r.at(lead, j));
    typename F::Elt inv = f.inv(r.at(lead, col));
    for (int j = 0; j < r.cols; ++j) r.at(lead, j) = f.mul(r.at(lead, j), inv);
    for (int i = 0; i < r.rows; ++i) {
      if (i == lead || f.is_zero(r.at(i, col))) continue;
      typename F::Elt c = r.at(i, col);
      for (int j = 0; j < r.cols; ++j)
        r.at(i, j) = f.sub(r.at(i, j), f.mul(c, r.at(lead, j)));
    }
    pivots.push_back(col);
    ++lead;
  }
  return {r, static_cast<int>(pivots.size()), pivots};
}

template <class F>
int rank(const Mat<F>& m) { return rref(m).rank; }

// Subspace of an ambient coordinate space, carried as a matrix whose rows
// form a basis (always kept in rref so comparisons are canonical).
template <class F>
struct Subspace {
  int ambient_dim = 0;
  Mat<F> basis;  // basis.rows x ambient_dim, rows independent, rref form

  int dim() const { return basis.rows; }
};

template <class F>
Subspace<F> make_subspace(const Mat<F>& span_rows) {
  RrefResult<F> r = rref(span_rows);
  Mat<F> b(span_rows.field, r.rank, span_rows.cols);
  for (int i = 0; i < r.rank; ++i)
    for (int j = 0; j < span_rows.cols; ++j) b.at(i, j) = r.mat.at(i, j);
  return Subspace<F>{span_rows.cols, b};
}

// Rows span the solution space of m * v^T = 0.
template <class F>
Subspace<F> kernel_basis(const Mat<F>& m) {
  const F& f = m.field;
  RrefResult<F> r = rref(m);
  std::vector<char> is_pivot(m.cols, 0);
  for (int c : r.pivot_cols) is_pivot[c] = 1;
  std::vector<int> free_cols;
  for (int j = 0; j < m.cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat<F> b(f, static_cast<int>(free_cols.size()), m.cols);
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fc = free_cols[k];
    b.at(static_cast<int>(k), fc) = f.one();
    for (int i = 0; i < r.rank; ++i)
      b.at(static_cast<int>(k), r.pivot_cols[i]) = f.neg(r.mat.at(i, fc));
  }
  return make_subspace(b);
}

// Row space of m.
template <class F>
Subspace<F> image_basis(const Mat<F>& m) { return make_subspace(m); }

// Column-space membership solve: find x with m * x = b, or nothing.
template <class F>
std::optional<std::vector<typename F::Elt>> solve(const Mat<F>& m, const std::vector<typename F::Elt>& b) {
  const F& f = m.field;
  if (static_cast<int>(b.size()) != m.rows) throw DimensionMismatch("solve rhs");
  Mat<F> aug(f, m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  RrefResult<F> r = rref(aug);
  for (int c : r.pivot_cols)
    if (c == m.cols) return std::nullopt;  // inconsistent
  std::vector<typename F::Elt> x(m.cols, f.zero());
  for (int i = 0; i < r.rank; ++i) x[r.pivot_cols[i]] = r.mat.at(i, m.cols);
  return x;
}

template <class F>
bool contains(const Subspace<F>& big, const Subspace<F>& small) {
  if (big.ambient_dim != small.ambient_dim) throw DimensionMismatch("contains");
  Mat<F> stacked(big.basis.field, big.dim() + small.dim(), big.ambient_dim);
  for (int i = 0; i < big.dim(); ++i)
    for (int j = 0; j < big.ambient_dim; ++j) stacked.at(i, j) = big.basis.at(i, j);
  for (int i = 0; i < small.dim(); ++i)
    for (int j = 0; j < big.ambient_dim; ++j) stacked.at(big.dim() + i, j) = small.basis.at(i, j);
  return rank(stacked) == big.dim();
}

template <class F>
Subspace<F> sum(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim != b.ambient_dim) throw DimensionMismatch("subspace sum");
  Mat<F> stacked(a.basis.field, a.dim() + b.dim(), a.ambient_dim);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.ambient_dim; ++j) stacked.at(i, j) = a.basis.at(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < a.ambient_dim; ++j) stacked.at(a.dim() + i, j) = b.basis.at(i, j);
  return make_subspace(stacked);
}

// Zassenhaus: intersect via the kernel of [A^T | B^T]-style stacking.
template <class F>
Subspace<F> intersect(const Subspace<F>& a, const Subspace<F>& b) {
  if (a.ambient_dim != b.ambient_dim) throw DimensionMismatch("subspace intersect");
  const F& f = a.basis.field;
  int da = a.dim(), db = b.dim(), n = a.ambient_dim;
  if (da == 0 || db == 0) return Subspace<F>{n, Mat<F>(f, 0, n)};
  // Solve x*A - y*B = 0 over row vectors: kernel of [A; -B]^T acting on (x,y).
  Mat<F> sys(f, n, da + db);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < da; ++i) sys.at(j, i) = a.basis.at(i, j);
    for (int i = 0; i < db; ++i) sys.at(j, da + i) = f.neg(b.basis.at(i, j));
  }
  Subspace<F> ker = kernel_basis(sys);
  Mat<F> vecs(f, ker.dim(), n);
  for (int k = 0; k < ker.dim(); ++k)
    for (int j = 0; j < n; ++j) {
      typename F::Elt v = f.zero();
      for (int i = 0; i < da; ++i) v = f.add(v, f.mul(ker.basis.at(k, i), a.basis.at(i, j)));
      vecs.at(k, j) = v;
    }
  return make_subspace(vecs);
}

// Coset representatives of ambient/sub plus the projection matrix that sends
// ambient coordinates to quotient coordinates. The section is deterministic:
// representatives are the non-pivot ambient basis directions completed
// against the subspace.
template <class F>
struct QuotientData {
  Mat<F> section;     // q x n: row i = representative of i-th quotient basis vector
  Mat<F> projection;  // q x n: quotient coords of an ambient vector v are projection * v
};

template <class F>
QuotientData<F> quotient_basis(const Subspace<F>& ambient, const Subspace<F>& sub) {
  const F& f = ambient.basis.field;
  if (ambient.ambient_dim != sub.ambient_dim) throw DimensionMismatch("quotient_basis");
  if (!contains(ambient, sub)) throw NotASubspace("quotient_basis: sub not contained in ambient");
  int n = ambient.ambient_dim;
  // Representatives = ambient basis rows that enlarge the span of sub.
  auto rank_of = [&](const Mat<F>& m) { return rank(m); };
  Mat<F> cur(f, 0, n);
  auto append_row = [&](const Mat<F>& src, int row) {
    Mat<F> nxt(f, cur.rows + 1, n);
    for (int i = 0; i < cur.rows; ++i)
      for (int j = 0; j < n; ++j) nxt.at(i, j) = cur.at(i, j);
    for (int j = 0; j < n; ++j) nxt.at(cur.rows, j) = src.at(row, j);
    return nxt;
  };
  for (int i = 0; i < sub.dim(); ++i) cur = append_row(sub.basis, i);
  int base_rank = rank_of(cur);
  assert(base_rank == sub.dim());
  (void)base_rank;
  std::vector<int> chosen;
  int cur_rank = sub.dim();
  for (int i = 0; i < ambient.dim(); ++i) {
    Mat<F> cand = append_row(ambient.basis, i);
    if (rank_of(cand) > cur_rank) {
      cur = cand;
      ++cur_rank;
      chosen.push_back(i);
    }
  }
  int q = static_cast<int>(chosen.size());
  QuotientData<F> out;
  out.section = Mat<F>(f, q, n);
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < n; ++j) out.section.at(k, j) = ambient.basis.at(chosen[k], j);
  // Complete [sub; section] by standard basis vectors to a full basis B, then
  // read the quotient coordinates off the section rows of B^{-1}. On the
  // ambient span this is the canonical projection; elsewhere it is a linear
  // extension that never gets evaluated on meaningful input.
  Mat<F> id = Mat<F>::identity(f, n);
  std::vector<int> extra;
  for (int j = 0; j < n && cur_rank < n; ++j) {
    Mat<F> cand = append_row(id, j);
    if (rank_of(cand) > cur_rank) {
      cur = cand;
      ++cur_rank;
      extra.push_back(j);
    }
  }
  Mat<F> bt(f, n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < sub.dim(); ++i) bt.at(j, i) = sub.basis.at(i, j);
    for (int k = 0; k < q; ++k) bt.at(j, sub.dim() + k) = out.section.at(k, j);
    for (size_t e = 0; e < extra.size(); ++e) bt.at(j, sub.dim() + q + static_cast<int>(e)) = id.at(extra[e], j);
  }
  Mat<F> binv = inverse(bt);
  out.projection = Mat<F>(f, q, n);
  for (int k = 0; k < q; ++k)
    for (int j = 0; j < n; ++j) out.projection.at(k, j) = binv.at(sub.dim() + k, j);
  return out;
}

// Convenience: full coordinate space as a subspace.
template <class F>
Subspace<F> full_space(const F& f, int n) {
  return Subspace<F>{n, Mat<F>::identity(f, n)};
}

template <class F>
std::vector<typename F::Elt> mat_apply(const Mat<F>& m, const std::vector<typename F::Elt>& v) {
  const F& f = m.field;
  if (static_cast<int>(v.size()) != m.cols) throw DimensionMismatch("apply");
  std::vector<typename F::Elt> r(m.rows, f.zero());
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!f.is_zero(m.at(i, j))) r[i] = f.add(r[i], f.mul(m.at(i, j), v[j]));
  return r;
}

template <class F>
bool is_invertible(const Mat<F>& m) {
  return m.rows == m.cols && rank(m) == m.rows;
}

template <class F>
Mat<F> inverse(const Mat<F>& m) {
  const F& f = m.field;
  if (m.rows != m.cols) throw DimensionMismatch("inverse of non-square");
  int n = m.rows;
  if (n == 0) return Mat<F>(f, 0, 0);
  Mat<F> aug(f, n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = f.one();
  }
  RrefResult<F> r = rref(aug);
  if (r.rank != n || r.pivot_cols.back() >= n) throw std::domain_error("inverse: singular matrix");
  Mat<F> inv(f, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv.at(i, j) = r.mat.at(i, n + j);
  return inv;
}

}  // namespace qtilt

#endif
