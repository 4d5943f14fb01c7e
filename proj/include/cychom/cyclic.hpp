#pragma once

// Cyclic homology from the total complex of the (b, B) bicomplex,
// C_n = H_n (+) H_{n-2} (+) ..., with the periodicity operator S, the SBI
// sequence and the S-stabilization estimate of periodic cyclic homology.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cychom/hochschild.hpp"

namespace cychom {

class CyclicComplex {
 public:
  /// Window of total degrees 0..top (Hochschild columns up to top).
  CyclicComplex(AlgebraPtr A, int top, ComplexKind kind = ComplexKind::Reduced,
                std::size_t budget = default_budget_dims())
      : bar_(make_bar_setup(std::move(A), kind), top, BarVariant::B, budget) {
    if (!bar_.algebra().is_unital()) throw NonUnital("the cyclic complex needs a unital algebra");
    for (int n = 0; n < top; ++n) B_.push_back(make_boundary(bar_.B_matrix(n)));
    std::size_t total = 0;
    std::vector<int> dims;
    for (int n = 0; n <= top; ++n) {
      int t = 0;
      offsets_.emplace_back();
      for (int k = 0; n - 2 * k >= 0; ++k) {
        offsets_[n].push_back(t);
        t += bar_.dim(n - 2 * k);
      }
      dims.push_back(t);
      total += static_cast<std::size_t>(t);
    }
    if (total > 4 * budget) throw SizeOverflow("cyclic window exceeds the dimension budget");
    std::vector<BoundaryPtr> d;
    for (int n = 0; n <= top; ++n) {
      if (n == 0) {
        d.push_back(nullptr);
        continue;
      }
      SparseMatrix<Scalar> m(dims[n - 1], dims[n]);
      for (int k = 0; n - 2 * k >= 0; ++k) {
        const int deg = n - 2 * k;
        if (deg >= 1) m.add_block(offsets_[n - 1][k], offsets_[n][k], bar_.complex().d(deg));
        if (k >= 1) m.add_block(offsets_[n - 1][k - 1], offsets_[n][k], B_[deg]->matrix());
      }
      d.push_back(make_boundary(std::move(m)));
    }
    total_ = ChainComplex(std::move(dims), std::move(d));
  }

  const BarComplex& bar() const { return bar_; }
  const ChainComplex& hochschild() const { return bar_.complex(); }
  const ChainComplex& total() const { return total_; }
  int top() const { return total_.top(); }
  ComplexKind kind() const { return bar_.kind(); }
  const SparseMatrix<Scalar>& B(int n) const { return B_.at(n)->matrix(); }

  /// Offset of the H_{n-2k} block inside C_n.
  int offset(int n, int k) const { return offsets_.at(n).at(k); }
  int blocks(int n) const { return static_cast<int>(offsets_.at(n).size()); }

  /// Component of a total chain in H_{n-2k}.
  SparseVec<Scalar> component(int n, int k, const SparseVec<Scalar>& w) const {
    const int lo = offset(n, k), hi = lo + bar_.dim(n - 2 * k);
    SparseVec<Scalar> out;
    for (const auto& [i, c] : w)
      if (i >= lo && i < hi) out.emplace_back(i - lo, c);
    return out;
  }
  /// Total chain from its components (H_n, H_{n-2}, ...).
  SparseVec<Scalar> assemble(int n, const std::vector<SparseVec<Scalar>>& parts) const {
    SparseVec<Scalar> out;
    for (int k = 0; k < static_cast<int>(parts.size()) && k < blocks(n); ++k)
      for (const auto& [i, c] : parts[k]) out.emplace_back(i + offset(n, k), c);
    return out;
  }

  /// S: C_n -> C_{n-2}, dropping the top component.
  SparseMatrix<Scalar> S_matrix(int n) const {
    SparseMatrix<Scalar> m(total_.dim(n - 2), total_.dim(n));
    if (n < 2) return m;
    const int shift = bar_.dim(n);
    for (int j = shift; j < total_.dim(n); ++j) m.set_col(j, {{j - shift, Scalar(1)}});
    return m;
  }
  /// I: H_n -> C_n, inclusion as the top component.
  SparseMatrix<Scalar> I_matrix(int n) const {
    SparseMatrix<Scalar> m(total_.dim(n), bar_.dim(n));
    for (int j = 0; j < bar_.dim(n); ++j) m.set_col(j, {{j, Scalar(1)}});
    return m;
  }
  /// Connecting map C_{m-1} -> H_m, w -> B(top component of w).
  SparseMatrix<Scalar> connecting_matrix(int m) const {
    SparseMatrix<Scalar> out(bar_.dim(m), total_.dim(m - 1));
    if (m < 1) return out;
    const auto& Bm = B(m - 1);
    for (int j = 0; j < bar_.dim(m - 1); ++j) out.set_col(j, Bm.col(j));
    return out;
  }

 private:
  BarComplex bar_;
  std::vector<BoundaryPtr> B_;
  std::vector<std::vector<int>> offsets_;
  ChainComplex total_;
};

inline HomologyReport hc(AlgebraPtr A, int n_max, const HochschildOptions& opt = {}) {
  CyclicComplex cc(A, n_max + 1, opt.kind, opt.budget);
  HomologyReport r = homology_report(cc.total(), n_max, opt.representatives);
  r.theory = "HC";
  r.algebra = A->name();
  r.kind = cc.kind();
  return r;
}

/// S applied to a total chain of degree n (n >= 2).
inline SparseVec<Scalar> apply_S(const CyclicComplex& cc, int n, const SparseVec<Scalar>& w) {
  if (n < 2) throw DegreeTooLow("S needs degree at least 2");
  return cc.S_matrix(n).apply(w);
}

// ---------------------------------------------------------------------------
// SBI exactness.

struct SbiNode {
  std::string name;       // e.g. "HC_3 (I -> . -> S)"
  int dim = 0;
  std::size_t rank_in = 0, rank_out = 0, composite_rank = 0;
  bool exact = false;
};

struct SbiReport {
  std::vector<int> hh, hc;
  std::vector<std::size_t> rank_I, rank_S, rank_B;  // rank_B[m]: HC_{m-1} -> HH_m
  std::vector<SbiNode> nodes;
  bool exact = true;
};

namespace detail {

inline ChainMap maps_from(int top, const std::function<SparseMatrix<Scalar>(int)>& f) {
  std::vector<SparseMatrix<Scalar>> mats;
  for (int n = 0; n <= top; ++n) mats.push_back(f(n));
  return make_chain_map(std::move(mats));
}

}  // namespace detail

/// Checks exactness of HH_n -I-> HC_n -S-> HC_{n-2} -B-> HH_{n-1} -> ... at every
/// node with index at most n_max.
inline SbiReport sbi_check(AlgebraPtr A, int n_max, ComplexKind kind = ComplexKind::Reduced,
                           std::size_t budget = default_budget_dims()) {
  CyclicComplex cc(std::move(A), n_max + 1, kind, budget);
  const ChainComplex& H = cc.hochschild();
  const ChainComplex& T = cc.total();
  const ChainComplex T2 = T.shifted(2), T1 = T.shifted(1), H1 = H.shifted(1);
  auto I = detail::maps_from(n_max, [&](int n) { return cc.I_matrix(n); });
  auto S = detail::maps_from(n_max, [&](int n) { return cc.S_matrix(n); });
  auto G = detail::maps_from(n_max, [&](int m) { return cc.connecting_matrix(m); });
  // Composites, each a chain map between the same pairs of complexes.
  auto SI = detail::maps_from(n_max, [&](int n) { return cc.S_matrix(n) * cc.I_matrix(n); });
  auto GS = detail::maps_from(n_max, [&](int n) {
    // T_n -> H_{n-1}: S then the connecting map; target complex H shifted by 1.
    SparseMatrix<Scalar> s = cc.S_matrix(n);
    return n >= 2 ? cc.connecting_matrix(n - 1) * s : SparseMatrix<Scalar>(H.dim(n - 1), T.dim(n));
  });
  auto IG = detail::maps_from(n_max, [&](int m) { return cc.I_matrix(m) * cc.connecting_matrix(m); });

  SbiReport r;
  for (int n = 0; n <= n_max; ++n) {
    r.hh.push_back(H.homology_dim(n));
    r.hc.push_back(T.homology_dim(n));
  }
  r.rank_I = induced_ranks(H, T, I, n_max);
  r.rank_S = induced_ranks(T, T2, S, n_max);
  r.rank_B = induced_ranks(T1, H, G, n_max);
  auto rank_SI = induced_ranks(H, T2, SI, n_max);
  auto rank_GS = induced_ranks(T, H1, GS, n_max);
  auto rank_IG = induced_ranks(T1, T, IG, n_max);

  auto add = [&](std::string name, int dim, std::size_t in, std::size_t out, std::size_t comp) {
    SbiNode node{std::move(name), dim, in, out, comp, false};
    node.exact = comp == 0 && static_cast<int>(in + out) == dim;
    r.exact = r.exact && node.exact;
    r.nodes.push_back(std::move(node));
  };
  for (int n = 0; n <= n_max; ++n) {
    // HH_n: in from HC_{n-1} by B, out to HC_n by I.
    add("HH_" + std::to_string(n), r.hh[n], r.rank_B[n], r.rank_I[n], rank_IG[n]);
    // HC_n after I: out to HC_{n-2} by S.
    add("HC_" + std::to_string(n) + " (I in, S out)", r.hc[n], r.rank_I[n], r.rank_S[n], rank_SI[n]);
    // HC_{n-2} after S: out to HH_{n-1} by B.
    if (n >= 2)
      add("HC_" + std::to_string(n - 2) + " (S in, B out)", r.hc[n - 2], r.rank_S[n], r.rank_B[n - 1], rank_GS[n]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// S-stabilization.

struct Stabilization {
  bool even_stable = false, odd_stable = false;
  int even_dim = 0, odd_dim = 0;
  std::vector<std::size_t> rank_S;  // rank_S[n] = rank of S: HC_n -> HC_{n-2}
  int cutoff = 0;
  std::string window;  // degrees where the ranks were compared
};

/// Compares rank(S: HC_{j+2k+2} -> HC_{j+2k}) for k = 0, 1 (j = 0, 1).
inline Stabilization hp_stabilization(AlgebraPtr A, int cutoff = 5, ComplexKind kind = ComplexKind::Reduced,
                                      std::size_t budget = default_budget_dims()) {
  if (cutoff < 4) throw InvalidArgument("stabilization needs cutoff at least 4");
  CyclicComplex cc(std::move(A), cutoff + 1, kind, budget);
  const ChainComplex& T = cc.total();
  auto S = detail::maps_from(cutoff, [&](int n) { return cc.S_matrix(n); });
  Stabilization st;
  st.cutoff = cutoff;
  st.rank_S = induced_ranks(T, T.shifted(2), S, cutoff);
  st.even_stable = st.rank_S[2] == st.rank_S[4];
  st.even_dim = static_cast<int>(st.rank_S[4]);
  if (cutoff >= 5) {
    st.odd_stable = st.rank_S[3] == st.rank_S[5];
    st.odd_dim = static_cast<int>(st.rank_S[5]);
  }
  st.window = "S: HC_{b+2} -> HC_b for b = 0..." + std::to_string(cutoff - 2);
  return st;
}

}  // namespace cychom
