#pragma once

// Sparse vectors and column-major sparse matrices over an exact field F
// (Rational or Cyclotomic).  Stored entries are never zero.

#include <algorithm>
#include <cstddef>
#include <map>
#include <tuple>
#include <utility>
#include <vector>

#include "cychom/cyclotomic.hpp"
#include "cychom/error.hpp"
#include "cychom/rational.hpp"

namespace cychom {

template <class F>
using SparseVec = std::vector<std::pair<int, F>>;

/// Sorted-by-index, zero-free form of an arbitrary list of (index, value) terms.
template <class F>
SparseVec<F> canonicalize(std::vector<std::pair<int, F>> terms) {
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec<F> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
    if (out.size() >= 2 && out[out.size() - 2].second.is_zero()) out.erase(out.end() - 2);
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  return out;
}

/// a + f*b for sorted sparse vectors.
template <class F>
SparseVec<F> axpy(const SparseVec<F>& a, const F& f, const SparseVec<F>& b) {
  SparseVec<F> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      F v = f * b[j].second;
      if (!v.is_zero()) out.emplace_back(b[j].first, std::move(v));
      ++j;
    } else {
      F v = a[i].second + f * b[j].second;
      if (!v.is_zero()) out.emplace_back(a[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class F>
F sparse_at(const SparseVec<F>& v, int idx) {
  auto it = std::lower_bound(v.begin(), v.end(), idx, [](const auto& e, int k) { return e.first < k; });
  if (it != v.end() && it->first == idx) return it->second;
  return F();
}

template <class F>
SparseVec<F> scale(const SparseVec<F>& v, const F& f) {
  SparseVec<F> out;
  if (f.is_zero()) return out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, x * f);
  return out;
}

template <class F>
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(cols)) {}

  static SparseMatrix identity(int n, const F& one = F(1)) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, one);
    return m;
  }

  static SparseMatrix from_triplets(int rows, int cols, std::vector<std::tuple<int, int, F>> trips) {
    SparseMatrix m(rows, cols);
    std::vector<std::vector<std::pair<int, F>>> tmp(static_cast<std::size_t>(cols));
    for (auto& [r, c, v] : trips) {
      if (r < 0 || r >= rows || c < 0 || c >= cols) throw InvalidArgument("triplet out of range");
      tmp[c].emplace_back(r, std::move(v));
    }
    for (int c = 0; c < cols; ++c) m.data_[c] = canonicalize(std::move(tmp[c]));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SparseVec<F>& col(int c) const { return data_[c]; }
  void set_col(int c, SparseVec<F> v) { data_[c] = std::move(v); }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& c : data_) n += c.size();
    return n;
  }
  bool is_zero() const { return nnz() == 0; }

  F at(int r, int c) const { return sparse_at(data_[c], r); }

  SparseMatrix transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int c = 0; c < cols_; ++c)
      for (const auto& [r, v] : data_[c]) t.data_[r].emplace_back(c, v);
    return t;
  }

  /// Row vectors of the matrix.
  std::vector<SparseVec<F>> row_vectors() const {
    std::vector<SparseVec<F>> rows(static_cast<std::size_t>(rows_));
    for (int c = 0; c < cols_; ++c)
      for (const auto& [r, v] : data_[c]) rows[r].emplace_back(c, v);
    return rows;
  }

  SparseVec<F> apply(const SparseVec<F>& x) const {
    std::vector<std::pair<int, F>> acc;
    for (const auto& [c, xv] : x)
      for (const auto& [r, v] : data_[c]) acc.emplace_back(r, v * xv);
    return canonicalize(std::move(acc));
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix product shape mismatch");
    SparseMatrix m(a.rows_, b.cols_);
    for (int c = 0; c < b.cols_; ++c) m.data_[c] = a.apply(b.data_[c]);
    return m;
  }
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix sum shape mismatch");
    SparseMatrix m(a.rows_, a.cols_);
    for (int c = 0; c < a.cols_; ++c) m.data_[c] = axpy(a.data_[c], F(1), b.data_[c]);
    return m;
  }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidArgument("matrix difference shape mismatch");
    SparseMatrix m(a.rows_, a.cols_);
    for (int c = 0; c < a.cols_; ++c) m.data_[c] = axpy(a.data_[c], F(-1), b.data_[c]);
    return m;
  }
  SparseMatrix scaled(const F& f) const {
    SparseMatrix m(rows_, cols_);
    for (int c = 0; c < cols_; ++c) m.data_[c] = scale(data_[c], f);
    return m;
  }

  /// Places `block` with its top-left corner at (r0, c0) of a copy of this matrix.
  void add_block(int r0, int c0, const SparseMatrix& block) {
    if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) throw InvalidArgument("block out of range");
    for (int c = 0; c < block.cols_; ++c) {
      if (block.data_[c].empty()) continue;
      SparseVec<F> shifted;
      shifted.reserve(block.data_[c].size());
      for (const auto& [r, v] : block.data_[c]) shifted.emplace_back(r + r0, v);
      data_[c0 + c] = axpy(data_[c0 + c], F(1), shifted);
    }
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  template <class G, class Conv>
  SparseMatrix<G> convert(Conv conv) const {
    SparseMatrix<G> m(rows_, cols_);
    for (int c = 0; c < cols_; ++c) {
      SparseVec<G> v;
      v.reserve(data_[c].size());
      for (const auto& [r, x] : data_[c]) v.emplace_back(r, conv(x));
      m.set_col(c, std::move(v));
    }
    return m;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<SparseVec<F>> data_;
};

inline bool all_rational(const SparseMatrix<Scalar>& m) {
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.col(c))
      if (!v.is_rational()) return false;
  return true;
}

inline SparseMatrix<Rational> to_rational(const SparseMatrix<Scalar>& m) {
  return m.convert<Rational>([](const Scalar& s) { return s.rational_part(); });
}

inline SparseMatrix<Scalar> to_scalar(const SparseMatrix<Rational>& m, int order) {
  return m.convert<Scalar>([order](const Rational& r) { return Scalar::rational(order, r); });
}

}  // namespace cychom
