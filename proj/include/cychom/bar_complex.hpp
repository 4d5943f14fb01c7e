#pragma once

// Bar complexes M (x) A^(x)n with the Hochschild boundary b (or b'),
// optionally normalized relative to a frame of orthogonal idempotent basis
// vectors E summing to 1.  With E = {1} this is the usual normalized
// complex; with a larger frame the chains are composable tensors over E,
// which computes the same homology because E is separable.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cychom/algebra.hpp"
#include "cychom/chain_complex.hpp"

namespace cychom {

enum class ComplexKind { Unnormalized, Normalized, Reduced };
enum class BarVariant { B, BPrime };

inline std::string to_string(ComplexKind k) {
  switch (k) {
    case ComplexKind::Unnormalized: return "unnormalized";
    case ComplexKind::Normalized: return "normalized";
    case ComplexKind::Reduced: return "reduced";
  }
  return "?";
}

/// Everything the builder needs, expressed in the basis the complex uses.
struct BarSetup {
  AlgebraPtr algebra;
  Bimodule module;
  bool diagonal = true;
  ComplexKind kind = ComplexKind::Unnormalized;
  std::vector<int> frame;         // idempotent basis indices (empty when unnormalized)
  std::vector<int> src, tgt;      // per algebra basis vector: frame slot on the left / right
  std::vector<int> msrc, mtgt;    // per module basis vector
  std::vector<char> interior;     // algebra basis vectors allowed in positions >= 1
  std::optional<SparseMatrix<Scalar>> basis_change;  // complex basis in original coordinates
};

/// Same algebra in the basis given by the columns of P (Pinv its inverse).
inline FDAlgebra change_basis(const FDAlgebra& A, const SparseMatrix<Scalar>& P, const SparseMatrix<Scalar>& Pinv,
                              std::vector<std::string> labels) {
  const int d = A.dim();
  std::vector<Element> prods(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prods[i * d + j] = Pinv.apply(A.mul(P.col(i), P.col(j)));
  std::optional<Element> unit;
  if (A.is_unital()) unit = Pinv.apply(A.unit());
  return FDAlgebra(A.field_order(), std::move(labels), std::move(prods), std::move(unit), A.name());
}

/// The module with the algebra's basis changed by P (module basis unchanged).
inline Bimodule rebase_module(const Bimodule& M, AlgebraPtr newA, const SparseMatrix<Scalar>& P) {
  const int da = newA->dim();
  Bimodule out{newA, M.dim, {}, {}, M.name};
  out.left.resize(static_cast<std::size_t>(da) * M.dim);
  out.right.resize(static_cast<std::size_t>(M.dim) * da);
  for (int i = 0; i < da; ++i)
    for (int x = 0; x < M.dim; ++x) {
      out.left[static_cast<std::size_t>(i) * M.dim + x] = M.left_elem(P.col(i), basis_element(x));
      out.right[static_cast<std::size_t>(x) * da + i] = M.right_elem(basis_element(x), P.col(i));
    }
  return out;
}

namespace detail {

/// Orthogonal idempotent basis vectors summing to the unit such that every
/// basis vector is homogeneous (e_x b e_y = b for exactly one pair).
inline bool detect_frame(const FDAlgebra& A, std::vector<int>& frame, std::vector<int>& src, std::vector<int>& tgt) {
  if (!A.is_unital()) return false;
  frame.clear();
  for (const auto& [k, c] : A.unit()) {
    if (!c.is_one()) return false;
    frame.push_back(k);
  }
  for (int x : frame)
    for (int y : frame) {
      const Element& p = A.basis_product(x, y);
      if (x == y ? p != basis_element(x) : !p.empty()) return false;
    }
  const int d = A.dim();
  src.assign(d, -1);
  tgt.assign(d, -1);
  for (int b = 0; b < d; ++b) {
    for (int s = 0; s < static_cast<int>(frame.size()); ++s) {
      const Element& l = A.basis_product(frame[s], b);
      const Element& r = A.basis_product(b, frame[s]);
      if (!l.empty()) {
        if (l != basis_element(b) || src[b] >= 0) return false;
        src[b] = s;
      }
      if (!r.empty()) {
        if (r != basis_element(b) || tgt[b] >= 0) return false;
        tgt[b] = s;
      }
    }
    if (src[b] < 0 || tgt[b] < 0) return false;
  }
  return true;
}

}  // namespace detail

/// Prepares the complex of A with coefficients in M (diagonal when absent).
/// Reduced falls back to Normalized when A has no idempotent frame; the
/// normalized cases change basis so the unit is a basis vector when needed.
inline BarSetup make_bar_setup(AlgebraPtr A, ComplexKind kind, const Bimodule* coefficients = nullptr) {
  BarSetup s;
  s.kind = kind;
  s.diagonal = coefficients == nullptr;
  const int d = A->dim();
  if (kind == ComplexKind::Unnormalized) {
    s.algebra = A;
    s.module = coefficients ? *coefficients : diagonal_bimodule(A);
    s.src.assign(d, 0);
    s.tgt.assign(d, 0);
    s.interior.assign(d, 1);
  } else {
    if (!A->is_unital()) throw NonUnital("normalized complexes need a unital algebra");
    std::vector<int> frame, src, tgt;
    bool framed = kind == ComplexKind::Reduced && s.diagonal && detail::detect_frame(*A, frame, src, tgt);
    if (!framed) {
      s.kind = ComplexKind::Normalized;
      const Element& u = A->unit();
      if (u.size() == 1 && u[0].second.is_one()) {
        s.algebra = A;
      } else {
        // Replace the first basis vector met by the unit with the unit.
        const int j = u.front().first;
        SparseMatrix<Scalar> P = SparseMatrix<Scalar>::identity(d), Pinv = SparseMatrix<Scalar>::identity(d);
        P.set_col(j, u);
        Scalar inv = u.front().second.inverse();
        Element ej;
        for (const auto& [k, c] : u) ej.emplace_back(k, k == j ? inv : -c * inv);
        Pinv.set_col(j, ej);
        auto labels = A->labels();
        labels[j] = "1";
        s.algebra = share(change_basis(*A, P, Pinv, labels));
        s.basis_change = P;
      }
      const int one = s.algebra->unit().front().first;
      frame = {one};
      src.assign(d, 0);
      tgt.assign(d, 0);
    } else {
      s.algebra = A;
    }
    s.frame = frame;
    s.src = src;
    s.tgt = tgt;
    s.interior.assign(d, 1);
    for (int x : frame) s.interior[x] = 0;
    if (coefficients)
      s.module = s.basis_change ? rebase_module(*coefficients, s.algebra, *s.basis_change) : *coefficients;
    else
      s.module = diagonal_bimodule(s.algebra);
  }
  if (s.diagonal) {
    s.msrc = s.src;
    s.mtgt = s.tgt;
  } else {
    s.msrc.assign(s.module.dim, 0);
    s.mtgt.assign(s.module.dim, 0);
  }
  return s;
}

class BarComplex {
 public:
  BarComplex(BarSetup setup, int n_max, BarVariant variant = BarVariant::B,
             std::size_t budget = default_budget_dims())
      : s_(std::move(setup)), variant_(variant), budget_(budget) {
    if (n_max < 0) throw InvalidArgument("n_max must be nonnegative");
    if (variant == BarVariant::BPrime && (!s_.diagonal || s_.kind != ComplexKind::Unnormalized))
      throw InvalidArgument("the b' complex is built unnormalized with diagonal coefficients");
    const int da = s_.algebra->dim();
    radix_ = static_cast<std::uint64_t>(std::max(da, s_.module.dim));
    // Interior products with frame components dropped.
    proj_.resize(static_cast<std::size_t>(da) * da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (const auto& [k, c] : s_.algebra->basis_product(i, j))
          if (s_.interior[k]) proj_[i * da + j].emplace_back(k, c);
    for (int n = 0; n <= n_max; ++n) enumerate(n);
    std::vector<BoundaryPtr> d;
    std::vector<int> dims;
    for (int n = 0; n <= n_max; ++n) {
      dims.push_back(dim(n));
      d.push_back(n == 0 ? nullptr : make_boundary(boundary_matrix(n)));
    }
    complex_ = ChainComplex(std::move(dims), std::move(d));
  }

  const BarSetup& setup() const { return s_; }
  const FDAlgebra& algebra() const { return *s_.algebra; }
  ComplexKind kind() const { return s_.kind; }
  BarVariant variant() const { return variant_; }
  int top() const { return static_cast<int>(keys_.size()) - 1; }
  int dim(int n) const { return n < 0 || n > top() ? 0 : static_cast<int>(keys_[n].size()); }
  const ChainComplex& complex() const { return complex_; }

  std::vector<int> tensor(int n, int idx) const { return decode(n, keys_.at(n).at(idx)); }

  int index(int n, const std::vector<int>& t) const {
    if (n < 0 || n > top()) return -1;
    const auto& ks = keys_[n];
    auto key = encode(t);
    auto it = std::lower_bound(ks.begin(), ks.end(), key);
    return it != ks.end() && *it == key ? static_cast<int>(it - ks.begin()) : -1;
  }

  std::string label(int n, int idx) const {
    auto t = tensor(n, idx);
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) s += "⊗";
      s += i == 0 && !s_.diagonal ? "m" + std::to_string(t[0]) : s_.algebra->label(t[i]);
    }
    return s;
  }

  /// Hochschild boundary b (or b') applied to a chain of degree n.
  SparseVec<Scalar> apply_boundary(int n, const SparseVec<Scalar>& v) const {
    std::vector<std::pair<int, Scalar>> acc;
    for (const auto& [idx, c] : v) {
      auto t = tensor(n, idx);
      face_terms(n, t, c, acc);
    }
    return canonicalize(std::move(acc));
  }

  /// Signed cyclic permutation t on degree n (unnormalized, diagonal).
  SparseVec<Scalar> apply_t(int n, const SparseVec<Scalar>& v) const {
    require_cyclic(false);
    std::vector<std::pair<int, Scalar>> acc;
    const Scalar sg(n % 2 ? -1 : 1);
    for (const auto& [idx, c] : v) {
      auto t = tensor(n, idx);
      std::rotate(t.rbegin(), t.rbegin() + 1, t.rend());
      acc.emplace_back(must_index(n, t), sg * c);
    }
    return canonicalize(std::move(acc));
  }

  /// s(w) = 1 (x) w, degree n -> n + 1 (unnormalized, unital).
  SparseVec<Scalar> apply_s(int n, const SparseVec<Scalar>& v) const {
    if (!s_.algebra->is_unital()) throw NonUnital("the homotopy s needs a unit");
    if (s_.kind != ComplexKind::Unnormalized || !s_.diagonal) throw InvalidArgument("s acts on the unnormalized bar complex");
    std::vector<std::pair<int, Scalar>> acc;
    for (const auto& [idx, c] : v) {
      auto t = tensor(n, idx);
      std::vector<int> u(t.size() + 1);
      std::copy(t.begin(), t.end(), u.begin() + 1);
      for (const auto& [k, x] : s_.algebra->unit()) {
        u[0] = k;
        acc.emplace_back(must_index(n + 1, u), x * c);
      }
    }
    return canonicalize(std::move(acc));
  }

  /// Connes' B: degree n -> n + 1.  Unnormalized: (1 - t) s N.
  /// Normalized or reduced: sum_k (-1)^(nk) e (x) a_k ... a_n a_0 ... a_(k-1).
  SparseVec<Scalar> apply_B(int n, const SparseVec<Scalar>& v) const {
    require_cyclic(true);
    if (s_.kind == ComplexKind::Unnormalized) {
      SparseVec<Scalar> N = v, tk = v;
      for (int k = 1; k <= n; ++k) {
        tk = apply_t(n, tk);
        N = axpy(N, Scalar(1), tk);
      }
      SparseVec<Scalar> sN = apply_s(n, N);
      return axpy(sN, Scalar(-1), apply_t(n + 1, sN));
    }
    std::vector<std::pair<int, Scalar>> acc;
    for (const auto& [idx, c] : v) {
      auto t = tensor(n, idx);
      if (!s_.interior[t[0]]) continue;
      for (int k = 0; k <= n; ++k) {
        std::vector<int> u;
        u.reserve(n + 2);
        u.push_back(s_.frame[s_.src[t[k]]]);
        for (int i = 0; i <= n; ++i) u.push_back(t[(k + i) % (n + 1)]);
        acc.emplace_back(must_index(n + 1, u), (n * k) % 2 ? -c : c);
      }
    }
    return canonicalize(std::move(acc));
  }

  /// Matrix of B: C_n -> C_{n+1}.
  SparseMatrix<Scalar> B_matrix(int n) const {
    if (n + 1 > top()) throw InvalidArgument("B needs degree n + 1 in the window");
    SparseMatrix<Scalar> m(dim(n + 1), dim(n));
    for (int j = 0; j < dim(n); ++j) m.set_col(j, apply_B(n, {{j, Scalar(1)}}));
    return m;
  }

  /// Chain given by an explicit tensor of algebra elements (diagonal case):
  /// x_0 (x) ... (x) x_n expanded in the complex basis.  Tensors that are
  /// not basis chains of a normalized complex are projected.
  SparseVec<Scalar> tensor_chain(const std::vector<Element>& xs) const {
    const int n = static_cast<int>(xs.size()) - 1;
    std::vector<std::pair<int, Scalar>> acc;
    std::vector<int> t(xs.size());
    std::function<void(int, Scalar)> rec = [&](int pos, Scalar c) {
      if (pos > n) {
        int idx = index(n, t);
        if (idx >= 0) acc.emplace_back(idx, c);
        return;
      }
      for (const auto& [k, x] : xs[pos]) {
        if (pos > 0 && !s_.interior[k]) continue;
        t[pos] = k;
        rec(pos + 1, c * x);
      }
    };
    rec(0, Scalar(1));
    return canonicalize(std::move(acc));
  }

 private:
  void require_cyclic(bool need_unit) const {
    if (!s_.diagonal) throw InvalidArgument("cyclic operators need diagonal coefficients");
    if (need_unit && !s_.algebra->is_unital()) throw NonUnital("B needs a unital algebra");
  }

  std::uint64_t encode(const std::vector<int>& t) const {
    std::uint64_t k = 0;
    for (int x : t) k = k * radix_ + static_cast<std::uint64_t>(x);
    return k;
  }
  std::vector<int> decode(int n, std::uint64_t k) const {
    std::vector<int> t(static_cast<std::size_t>(n) + 1);
    for (int i = n; i >= 0; --i) {
      t[i] = static_cast<int>(k % radix_);
      k /= radix_;
    }
    return t;
  }

  int must_index(int n, const std::vector<int>& t) const {
    int i = index(n, t);
    if (i < 0) throw Error("InternalError", "tensor outside the chain basis");
    return i;
  }

  void enumerate(int n) {
    const int da = s_.algebra->dim(), dm = s_.module.dim;
    // Capacity of the integer key.
    long double cap = 1;
    for (int i = 0; i <= n; ++i) cap *= static_cast<long double>(radix_);
    if (cap > 1.8e19L) throw SizeOverflow("tensor degree " + std::to_string(n) + " too large to index");
    // Count composable tensors before allocating.
    const int r = std::max<int>(1, static_cast<int>(s_.frame.size()));
    std::vector<std::vector<long double>> paths(r, std::vector<long double>(r, 0));  // paths[x][y] of length n
    for (int x = 0; x < r; ++x) paths[x][x] = 1;
    for (int step = 0; step < n; ++step) {
      std::vector<std::vector<long double>> next(r, std::vector<long double>(r, 0));
      for (int x = 0; x < r; ++x)
        for (int a = 0; a < da; ++a)
          if (s_.interior[a])
            for (int y = 0; y < r; ++y)
              if (s_.src[a] == y) next[x][s_.tgt[a]] += paths[x][y];
      paths = std::move(next);
    }
    long double count = 0;
    for (int m = 0; m < dm; ++m) count += paths[s_.mtgt[m]][s_.msrc[m]];
    if (count > static_cast<long double>(budget_))
      throw SizeOverflow("chain space in degree " + std::to_string(n) + " has " +
                         std::to_string(static_cast<unsigned long long>(count)) + " coordinates, budget " +
                         std::to_string(budget_));
    std::vector<std::uint64_t> keys;
    keys.reserve(static_cast<std::size_t>(count));
    std::vector<int> interior;
    for (int a = 0; a < da; ++a)
      if (s_.interior[a]) interior.push_back(a);
    std::vector<int> t(static_cast<std::size_t>(n) + 1);
    std::function<void(int, int)> rec = [&](int pos, int at) {
      if (pos > n) {
        if (at == s_.msrc[t[0]]) keys.push_back(encode(t));
        return;
      }
      for (int a : interior)
        if (s_.src[a] == at) {
          t[pos] = a;
          rec(pos + 1, s_.tgt[a]);
        }
    };
    for (int m = 0; m < dm; ++m) {
      t[0] = m;
      rec(1, s_.mtgt[m]);
    }
    keys_.push_back(std::move(keys));
  }

  /// Accumulates c * b(t) (or b') in degree n - 1.
  void face_terms(int n, const std::vector<int>& t, const Scalar& c, std::vector<std::pair<int, Scalar>>& acc) const {
    if (n == 0) return;
    const int da = s_.algebra->dim();
    std::vector<int> u(t.begin() + 1, t.end());  // length n; u[0] is replaced
    // d_0: m . a_1
    for (const auto& [k, x] : s_.module.act_right(t[0], t[1])) {
      u[0] = k;
      acc.emplace_back(must_index(n - 1, u), c * x);
    }
    // interior faces
    for (int i = 1; i < n; ++i) {
      std::vector<int> w;
      w.reserve(n);
      for (int j = 0; j < i; ++j) w.push_back(t[j]);
      w.push_back(0);
      for (int j = i + 2; j <= n; ++j) w.push_back(t[j]);
      const Scalar sg = i % 2 ? -c : c;
      for (const auto& [k, x] : proj_[static_cast<std::size_t>(t[i]) * da + t[i + 1]]) {
        w[i] = k;
        acc.emplace_back(must_index(n - 1, w), sg * x);
      }
    }
    if (variant_ == BarVariant::BPrime) return;
    // d_n: a_n . m
    std::vector<int> w(t.begin(), t.end() - 1);
    const Scalar sg = n % 2 ? -c : c;
    for (const auto& [k, x] : s_.module.act_left(t[n], t[0])) {
      w[0] = k;
      acc.emplace_back(must_index(n - 1, w), sg * x);
    }
  }

  SparseMatrix<Scalar> boundary_matrix(int n) const {
    SparseMatrix<Scalar> m(dim(n - 1), dim(n));
    std::vector<std::pair<int, Scalar>> acc;
    for (int j = 0; j < dim(n); ++j) {
      acc.clear();
      face_terms(n, tensor(n, j), Scalar(1), acc);
      m.set_col(j, canonicalize(std::move(acc)));
      acc = {};
    }
    return m;
  }

  BarSetup s_;
  BarVariant variant_;
  std::size_t budget_;
  std::uint64_t radix_ = 1;
  std::vector<Element> proj_;
  std::vector<std::vector<std::uint64_t>> keys_;
  ChainComplex complex_;
};

}  // namespace cychom
