#pragma once

// Exact rank, reduced echelon subspaces, kernels and linear solves.
//
// rank() runs a right-looking sparse elimination with Markowitz-style pivot
// choice (fewest entries in the column, then fewest in the row, ties on the
// lowest index) and drops to a dense kernel once the active block fills past
// 25%.  Pivot choice never changes the reported rank; echelon forms are
// produced separately by Subspace, which is canonical.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "cychom/sparse.hpp"

namespace cychom {

namespace detail {

template <class F>
std::size_t dense_rank(std::vector<std::vector<F>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    F inv = m[rank][c].inverse();
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      F f = m[r][c] * inv;
      for (std::size_t j = c; j < cols; ++j)
        if (!m[rank][j].is_zero()) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Exact rank of a sparse matrix.
template <class F>
std::size_t rank(const SparseMatrix<F>& mat) {
  const int nr = mat.rows();
  const int nc = mat.cols();
  if (nr == 0 || nc == 0) return 0;

  std::vector<SparseVec<F>> rows = mat.row_vectors();
  std::vector<std::vector<int>> col_rows(static_cast<std::size_t>(nc));
  std::vector<int> col_count(static_cast<std::size_t>(nc), 0);
  std::vector<char> row_alive(static_cast<std::size_t>(nr), 1);
  std::vector<char> col_alive(static_cast<std::size_t>(nc), 1);
  std::size_t live_nnz = 0;
  for (int r = 0; r < nr; ++r) {
    for (const auto& [c, v] : rows[r]) {
      col_rows[c].push_back(r);
      ++col_count[c];
    }
    live_nnz += rows[r].size();
  }

  using Key = std::pair<int, int>;  // (count, col)
  std::priority_queue<Key, std::vector<Key>, std::greater<Key>> heap;
  for (int c = 0; c < nc; ++c)
    if (col_count[c] > 0) heap.emplace(col_count[c], c);

  int live_rows = 0;
  for (int r = 0; r < nr; ++r)
    if (!rows[r].empty()) ++live_rows;
  int live_cols = 0;
  for (int c = 0; c < nc; ++c) {
    if (col_count[c] > 0)
      ++live_cols;
    else
      col_alive[c] = 0;
  }

  std::size_t rk = 0;
  std::vector<int> stamp(static_cast<std::size_t>(nr), -1);
  std::vector<int> touched;
  int step = 0;

  while (!heap.empty()) {
    // Dense fallback once the remaining active block is small and dense.
    if (live_rows > 0 && live_cols > 0 && (step & 63) == 0) {
      const double area = double(live_rows) * double(live_cols);
      if (area <= 4.0e6 && double(live_nnz) > 0.25 * area) {
        std::vector<int> rmap, cmap(static_cast<std::size_t>(nc), -1);
        int k = 0;
        for (int c = 0; c < nc; ++c)
          if (col_alive[c] && col_count[c] > 0) cmap[c] = k++;
        std::vector<std::vector<F>> dense;
        for (int r = 0; r < nr; ++r) {
          if (!row_alive[r] || rows[r].empty()) continue;
          std::vector<F> row(static_cast<std::size_t>(k));
          for (const auto& [c, v] : rows[r])
            if (cmap[c] >= 0) row[cmap[c]] = v;
          dense.push_back(std::move(row));
        }
        return rk + detail::dense_rank(std::move(dense));
      }
    }
    ++step;

    auto [cnt, c] = heap.top();
    heap.pop();
    if (!col_alive[c] || cnt != col_count[c] || cnt == 0) continue;

    // Choose the shortest live row in column c.
    int best = -1;
    std::size_t best_len = 0;
    for (int r : col_rows[c]) {
      if (!row_alive[r]) continue;
      if (sparse_at(rows[r], c).is_zero()) continue;
      if (best < 0 || rows[r].size() < best_len || (rows[r].size() == best_len && r < best)) {
        best = r;
        best_len = rows[r].size();
      }
    }
    if (best < 0) {
      col_count[c] = 0;
      continue;
    }
    ++rk;
    const SparseVec<F> prow = rows[best];
    const F pinv = sparse_at(prow, c).inverse();

    touched.clear();
    for (int r : col_rows[c]) {
      if (r == best || !row_alive[r] || stamp[r] == step) continue;
      stamp[r] = step;
      F a = sparse_at(rows[r], c);
      if (a.is_zero()) continue;
      F f = -(a * pinv);
      // Merge, tracking fill-in and cancellation per column.
      const SparseVec<F>& old = rows[r];
      SparseVec<F> out;
      out.reserve(old.size() + prow.size());
      std::size_t i = 0, j = 0;
      while (i < old.size() || j < prow.size()) {
        if (j == prow.size() || (i < old.size() && old[i].first < prow[j].first)) {
          out.push_back(old[i++]);
        } else if (i == old.size() || prow[j].first < old[i].first) {
          const int cc = prow[j].first;
          F v = f * prow[j].second;
          if (!v.is_zero()) {
            out.emplace_back(cc, std::move(v));
            ++col_count[cc];
            col_rows[cc].push_back(r);
            ++live_nnz;
            touched.push_back(cc);
          }
          ++j;
        } else {
          const int cc = old[i].first;
          F v = old[i].second + f * prow[j].second;
          if (!v.is_zero()) {
            out.emplace_back(cc, std::move(v));
          } else {
            --col_count[cc];
            --live_nnz;
            touched.push_back(cc);
          }
          ++i;
          ++j;
        }
      }
      rows[r] = std::move(out);
      if (rows[r].empty()) {
        row_alive[r] = 0;
        --live_rows;
      }
    }
    // Retire the pivot row and column.
    for (const auto& [cc, v] : prow) {
      --col_count[cc];
      --live_nnz;
      touched.push_back(cc);
    }
    row_alive[best] = 0;
    --live_rows;
    col_alive[c] = 0;
    --live_cols;
    col_rows[c].clear();
    col_rows[c].shrink_to_fit();
    for (int cc : touched) {
      if (!col_alive[cc]) continue;
      if (col_count[cc] > 0) {
        heap.emplace(col_count[cc], cc);
      } else {
        col_alive[cc] = 0;
        --live_cols;
      }
    }
  }
  return rk;
}

/// Rank of a Scalar matrix, routed through the rational fast path when possible.
inline std::size_t rank_of(const SparseMatrix<Scalar>& m) {
  if (all_rational(m)) return rank(to_rational(m));
  return rank(m);
}

/// A subspace of F^n held in reduced row echelon form: monic pivots, zeros in
/// every other basis vector's pivot column, pivots strictly increasing.
/// Equality of subspaces is equality of these bases.
template <class F>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(int ambient) : ambient_(ambient) {}

  static Subspace full(int n) {
    Subspace s(n);
    for (int i = 0; i < n; ++i) s.insert(SparseVec<F>{{i, F(1)}});
    return s;
  }
  static Subspace span(int n, const std::vector<SparseVec<F>>& vecs) {
    Subspace s(n);
    for (const auto& v : vecs) s.insert(v);
    return s;
  }

  int ambient() const { return ambient_; }
  int dim() const { return static_cast<int>(rows_.size()); }
  /// Basis vectors in increasing pivot order.
  std::vector<SparseVec<F>> basis() const {
    std::vector<SparseVec<F>> out;
    out.reserve(rows_.size());
    for (const auto& [p, r] : rows_) out.push_back(r);
    return out;
  }
  std::vector<int> pivots() const {
    std::vector<int> p;
    for (const auto& [k, r] : rows_) p.push_back(k);
    return p;
  }

  /// v minus its projection along the echelon basis (normal form modulo the subspace).
  SparseVec<F> reduce(const SparseVec<F>& v) const {
    SparseVec<F> w = v;
    for (const auto& [idx, val] : v) {
      auto it = rows_.find(idx);
      if (it == rows_.end()) continue;
      w = axpy(w, F(-val), it->second);
    }
    return w;
  }

  bool contains(const SparseVec<F>& v) const { return reduce(v).empty(); }
  bool contains(const Subspace& w) const {
    check_ambient(w);
    for (const auto& [p, r] : w.rows_)
      if (!contains(r)) return false;
    return true;
  }

  /// Adds v; returns true when the dimension grew.
  bool insert(const SparseVec<F>& v) {
    for (const auto& [i, x] : v)
      if (i < 0 || i >= ambient_) throw AmbientMismatch("vector index outside ambient space");
    SparseVec<F> w = reduce(v);
    if (w.empty()) return false;
    const int lead = w.front().first;
    w = scale(w, w.front().second.inverse());
    for (auto& [p, r] : rows_) {
      F a = sparse_at(r, lead);
      if (!a.is_zero()) r = axpy(r, F(-a), w);
    }
    rows_.emplace(lead, std::move(w));
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
  }

  Subspace operator+(const Subspace& o) const {
    check_ambient(o);
    Subspace s = *this;
    for (const auto& [p, r] : o.rows_) s.insert(r);
    return s;
  }

  Subspace intersect(const Subspace& o) const;

  /// dim(this) - dim(w), requiring w inside this.
  int quotient_dim(const Subspace& w) const {
    check_ambient(w);
    if (!contains(w)) throw NotContained("quotient_dim: subspace not contained");
    return dim() - w.dim();
  }

  /// Coordinates of v (which must lie in the subspace) in the echelon basis.
  std::vector<F> coordinates(const SparseVec<F>& v) const {
    if (!contains(v)) throw NotContained("vector not in subspace");
    std::vector<F> out;
    for (const auto& [p, r] : rows_) out.push_back(sparse_at(v, p));
    return out;
  }

 private:
  void check_ambient(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw AmbientMismatch("subspaces live in different ambient spaces");
  }

  int ambient_ = 0;
  std::map<int, SparseVec<F>> rows_;
};

/// Row space of the matrix in F^cols.
template <class F>
Subspace<F> row_space(const SparseMatrix<F>& m) {
  Subspace<F> s(m.cols());
  for (const auto& r : m.row_vectors()) s.insert(r);
  return s;
}

/// Column space of the matrix in F^rows.
template <class F>
Subspace<F> column_space(const SparseMatrix<F>& m) {
  Subspace<F> s(m.rows());
  for (int c = 0; c < m.cols(); ++c) s.insert(m.col(c));
  return s;
}

/// Canonical basis of the right null space.
template <class F>
Subspace<F> kernel_basis(const SparseMatrix<F>& m) {
  Subspace<F> rs = row_space(m);
  std::vector<char> is_pivot(static_cast<std::size_t>(m.cols()), 0);
  for (int p : rs.pivots()) is_pivot[p] = 1;
  // For each free column f: e_f - sum_r r[f] e_{pivot(r)}.
  std::vector<std::vector<std::pair<int, F>>> kvec(static_cast<std::size_t>(m.cols()));
  auto basis = rs.basis();
  auto piv = rs.pivots();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (const auto& [c, v] : basis[i])
      if (!is_pivot[c]) kvec[c].emplace_back(piv[i], -v);
  Subspace<F> ker(m.cols());
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    auto terms = std::move(kvec[f]);
    terms.emplace_back(f, F(1));
    ker.insert(canonicalize(std::move(terms)));
  }
  return ker;
}

template <class F>
Subspace<F> Subspace<F>::intersect(const Subspace& o) const {
  check_ambient(o);
  // Solve sum a_i v_i - sum b_j w_j = 0 and map the a-part back.
  auto vb = basis();
  auto wb = o.basis();
  const int k = static_cast<int>(vb.size()), l = static_cast<int>(wb.size());
  SparseMatrix<F> m(ambient_, k + l);
  for (int i = 0; i < k; ++i) m.set_col(i, vb[i]);
  for (int j = 0; j < l; ++j) m.set_col(k + j, scale(wb[j], F(-1)));
  Subspace<F> ker = kernel_basis(m);
  Subspace<F> out(ambient_);
  for (const auto& kv : ker.basis()) {
    std::vector<std::pair<int, F>> acc;
    for (const auto& [idx, coef] : kv)
      if (idx < k)
        for (const auto& [r, x] : vb[idx]) acc.emplace_back(r, x * coef);
    out.insert(canonicalize(std::move(acc)));
  }
  return out;
}

/// Canonical particular solution of M x = y (free variables set to zero), or
/// nullopt when the system is inconsistent.
template <class F>
std::optional<SparseVec<F>> solve(const SparseMatrix<F>& m, const SparseVec<F>& y) {
  // Row-reduce [M | y] and read the solution off the pivots.
  const int n = m.cols();
  auto rows = m.row_vectors();
  for (const auto& [r, v] : y) rows[r].emplace_back(n, v);
  Subspace<F> rs(n + 1);
  for (const auto& r : rows) rs.insert(r);
  std::vector<std::pair<int, F>> x;
  for (const auto& r : rs.basis()) {
    const int p = r.front().first;
    if (p == n) return std::nullopt;
    F rhs = sparse_at(r, n);
    if (!rhs.is_zero()) x.emplace_back(p, rhs);
  }
  return canonicalize(std::move(x));
}

}  // namespace cychom
