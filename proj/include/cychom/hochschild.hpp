#pragma once

// Hochschild homology: dimensions and representatives, coefficients in a
// bimodule, traces, H-unitality, induced maps, and the Morita maps Tr_* and
// iota_* for matrix algebras.

#include <optional>
#include <string>
#include <vector>

#include "cychom/bar_complex.hpp"

namespace cychom {

struct HomologyReport {
  std::string theory;   // "HH", "HC", ...
  std::string algebra;
  ComplexKind kind = ComplexKind::Reduced;
  std::vector<HomologyDegree> degrees;

  std::vector<int> dims() const {
    std::vector<int> d;
    for (const auto& h : degrees) d.push_back(h.dim);
    return d;
  }
};

struct HochschildOptions {
  ComplexKind kind = ComplexKind::Reduced;
  bool representatives = true;
  std::size_t budget = default_budget_dims();
};

inline HomologyReport homology_report(const ChainComplex& C, int n_max, bool reps) {
  HomologyReport r;
  for (int n = 0; n <= n_max; ++n) r.degrees.push_back(homology_degree(C, n, reps));
  return r;
}

/// HH_0..HH_{n_max}.  Nonunital algebras use the unnormalized complex,
/// which never refers to a unit.
inline HomologyReport hh(AlgebraPtr A, int n_max, const HochschildOptions& opt = {}) {
  ComplexKind kind = A->is_unital() ? opt.kind : ComplexKind::Unnormalized;
  BarComplex bar(make_bar_setup(A, kind), n_max + 1, BarVariant::B, opt.budget);
  HomologyReport r = homology_report(bar.complex(), n_max, opt.representatives);
  r.theory = "HH";
  r.algebra = A->name();
  r.kind = bar.kind();
  return r;
}

inline HomologyReport hh_with_coefficients(const Bimodule& M, int n_max, const HochschildOptions& opt = {}) {
  ComplexKind kind = opt.kind == ComplexKind::Unnormalized ? ComplexKind::Unnormalized : ComplexKind::Normalized;
  if (!M.algebra->is_unital()) throw NonUnital("coefficient complexes need a unital algebra");
  BarComplex bar(make_bar_setup(M.algebra, kind, &M), n_max + 1, BarVariant::B, opt.budget);
  HomologyReport r = homology_report(bar.complex(), n_max, opt.representatives);
  r.theory = "HH(" + M.name + ")";
  r.algebra = M.algebra->name();
  r.kind = bar.kind();
  return r;
}

/// Basis of the traces {tau : tau(ab) = tau(ba)} as coordinate functionals.
inline Subspace<Scalar> hh0_traces(const FDAlgebra& A) {
  const int d = A.dim();
  std::vector<SparseVec<Scalar>> rows;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      auto c = axpy(A.basis_product(i, j), Scalar(-1), A.basis_product(j, i));
      if (!c.empty()) rows.push_back(std::move(c));
    }
  SparseMatrix<Scalar> commutators(d, static_cast<int>(rows.size()));
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) commutators.set_col(r, rows[r]);
  return kernel_basis(commutators.transpose());
}

inline Scalar apply_functional(const SparseVec<Scalar>& tau, const Element& x) {
  Scalar s;
  std::size_t i = 0, j = 0;
  while (i < tau.size() && j < x.size()) {
    if (tau[i].first < x[j].first)
      ++i;
    else if (x[j].first < tau[i].first)
      ++j;
    else
      s += tau[i++].second * x[j++].second;
  }
  return s;
}

// ---------------------------------------------------------------------------
// H-unitality.

struct HUnitality {
  enum class Status { AcyclicUpToCutoff, FailsAtDegree, NotApplicable } status = Status::NotApplicable;
  int cutoff = 0;
  int failing_degree = -1;
  std::vector<int> bprime_homology;  // degrees 0..cutoff
};

inline std::string to_string(HUnitality::Status s) {
  switch (s) {
    case HUnitality::Status::AcyclicUpToCutoff: return "acyclic-up-to-cutoff";
    case HUnitality::Status::FailsAtDegree: return "fails-at-degree";
    case HUnitality::Status::NotApplicable: return "not-applicable";
  }
  return "?";
}

/// Homology of the b' complex in degrees 0..cutoff.  Unital algebras are
/// reported NotApplicable (s contracts the complex) but still computed.
inline HUnitality h_unitality(AlgebraPtr A, int cutoff, std::size_t budget = default_budget_dims()) {
  BarComplex bar(make_bar_setup(A, ComplexKind::Unnormalized), cutoff + 1, BarVariant::BPrime, budget);
  HUnitality h;
  h.cutoff = cutoff;
  for (int n = 0; n <= cutoff; ++n) h.bprime_homology.push_back(bar.complex().homology_dim(n));
  if (A->is_unital()) return h;
  h.status = HUnitality::Status::AcyclicUpToCutoff;
  for (int n = 0; n <= cutoff; ++n)
    if (h.bprime_homology[n] != 0) {
      h.status = HUnitality::Status::FailsAtDegree;
      h.failing_degree = n;
      break;
    }
  return h;
}

// ---------------------------------------------------------------------------
// Maps between bar complexes.

/// Degree-wise matrices of the chain map that applies `f` to each tensor of
/// degree n (given as a list of algebra elements) for n = 0..top.
inline ChainMap tensor_chain_map(const BarComplex& src, const BarComplex& dst, int top,
                                 const std::function<SparseVec<Scalar>(int, const std::vector<int>&)>& f) {
  std::vector<SparseMatrix<Scalar>> mats;
  for (int n = 0; n <= top; ++n) {
    SparseMatrix<Scalar> m(dst.dim(n), src.dim(n));
    for (int j = 0; j < src.dim(n); ++j) m.set_col(j, f(n, src.tensor(n, j)));
    mats.push_back(std::move(m));
  }
  return make_chain_map(std::move(mats));
}

/// phi^(x)(n+1) between bar complexes of the same kind (unnormalized, or
/// normalized when phi is unital).
inline ChainMap tensor_power_map(const LinearMap& phi, const BarComplex& src, const BarComplex& dst, int top) {
  return tensor_chain_map(src, dst, top, [&](int, const std::vector<int>& t) {
    std::vector<Element> xs;
    for (int i : t) xs.push_back(phi.matrix.col(i));
    return dst.tensor_chain(xs);
  });
}

struct InducedMap {
  std::vector<std::size_t> ranks;
  /// Matrix on homology in the canonical representative bases, when small
  /// enough to compute.  mats[n][i][j]: coordinate i of the image of class j.
  std::vector<std::optional<std::vector<std::vector<Scalar>>>> matrices;
  std::vector<int> source_dims, target_dims;
};

inline InducedMap induced_on_homology(const ChainComplex& C, const ChainComplex& D, const ChainMap& f, int n_max,
                                      bool with_matrices = true) {
  InducedMap out;
  out.ranks = induced_ranks(C, D, f, n_max);
  for (int n = 0; n <= n_max; ++n) {
    out.source_dims.push_back(C.homology_dim(n));
    out.target_dims.push_back(D.homology_dim(n));
    std::optional<std::vector<std::vector<Scalar>>> mat;
    if (with_matrices && C.dim(n) <= kRepresentativeBudget && D.dim(n) <= kRepresentativeBudget) {
      auto hc = homology_degree(C, n, true), hd = homology_degree(D, n, true);
      std::vector<std::vector<Scalar>> m(hd.dim, std::vector<Scalar>(hc.dim));
      auto reps = hc.representatives->basis();
      for (int j = 0; j < hc.dim; ++j) {
        auto coords = class_coordinates(hd, f.at(n).apply(reps[j]));
        for (int i = 0; i < hd.dim; ++i) m[i][j] = coords[i];
      }
      mat = std::move(m);
    }
    out.matrices.push_back(std::move(mat));
  }
  return out;
}

/// phi_* on HH_0..HH_{n_max}, through unnormalized complexes.
inline InducedMap induced_map_hh(const LinearMap& phi, int n_max, std::size_t budget = default_budget_dims()) {
  if (!phi.multiplicative) throw NotMultiplicative("induced maps on Hochschild homology need a multiplicative map");
  BarComplex src(make_bar_setup(phi.source, ComplexKind::Unnormalized), n_max + 1, BarVariant::B, budget);
  BarComplex dst(make_bar_setup(phi.target, ComplexKind::Unnormalized), n_max + 1, BarVariant::B, budget);
  return induced_on_homology(src.complex(), dst.complex(), tensor_power_map(phi, src, dst, n_max), n_max);
}

// ---------------------------------------------------------------------------
// Morita maps for M_N(A) with the basis of matrix_algebra.

/// Tr_*(m_0 (x) a_0, ..., m_n (x) a_n) = Tr(m_0 ... m_n) a_0 (x) ... (x) a_n on basis
/// tensors of M_N(A); returns the A-tensor or nothing when the trace vanishes.
inline std::optional<std::vector<int>> trace_tensor(int N, int dA, const std::vector<int>& t) {
  std::vector<int> out;
  out.reserve(t.size());
  const int n = static_cast<int>(t.size());
  for (int k = 0; k < n; ++k) {
    int pq = t[k] / dA, i = t[k] % dA;
    int q = pq % N;
    int p_next = (t[(k + 1) % n] / dA) / N;
    if (q != p_next) return std::nullopt;
    out.push_back(i);
  }
  return out;
}

/// Diagonal inclusion a -> sum_p E_pp (x) a as an element of M_N(A).
inline Element diagonal_embedding(int N, int dA, const Element& a) {
  Element out;
  for (int p = 0; p < N; ++p)
    for (const auto& [i, c] : a) out.emplace_back((p * N + p) * dA + i, c);
  return canonicalize(std::move(out));
}

/// Tr_* applied to a chain of the unnormalized complex of M_N(A).
inline SparseVec<Scalar> apply_trace(const BarComplex& cM, const BarComplex& cA, int N, int n,
                                     const SparseVec<Scalar>& v) {
  const int dA = cA.algebra().dim();
  std::vector<std::pair<int, Scalar>> acc;
  for (const auto& [idx, c] : v)
    if (auto u = trace_tensor(N, dA, cM.tensor(n, idx))) acc.emplace_back(cA.index(n, *u), c);
  return canonicalize(std::move(acc));
}

/// The chain maps iota_* : C(A) -> C(M_N A) and Tr_* : C(M_N A) -> C(A) on
/// unnormalized complexes.
struct MoritaMaps {
  ChainMap iota, trace;
};

inline MoritaMaps morita_maps(const BarComplex& cA, const BarComplex& cM, int N, int top) {
  const int dA = cA.algebra().dim();
  MoritaMaps m;
  m.iota = tensor_chain_map(cA, cM, top, [&](int, const std::vector<int>& t) {
    std::vector<Element> xs;
    for (int i : t) xs.push_back(diagonal_embedding(N, dA, basis_element(i)));
    return cM.tensor_chain(xs);
  });
  m.trace = tensor_chain_map(cM, cA, top, [&](int n, const std::vector<int>& t) {
    SparseVec<Scalar> v;
    if (auto u = trace_tensor(N, dA, t)) v.emplace_back(cA.index(n, *u), Scalar(1));
    return v;
  });
  return m;
}

struct MoritaCheck {
  int N = 0;
  std::vector<int> dims_A, dims_MN;
  std::vector<std::size_t> composite_ranks;  // rank of (Tr iota)_*
  std::vector<std::size_t> defect_ranks;     // rank of (Tr iota - N id)_*
  bool chain_level_identity = false;         // Tr iota == N id already on chains
  bool ok = false;
};

/// Tr_* iota_* = N id on HH_0..HH_{n_max} and dims HH(M_N A) = dims HH(A).
/// The composite is evaluated tensor by tensor, so the unnormalized complex
/// of M_N(A) is never built; its homology comes from the reduced complex.
inline MoritaCheck morita_check(AlgebraPtr A, int N, int n_max, std::size_t budget = default_budget_dims()) {
  MoritaCheck r;
  r.N = N;
  BarComplex cA(make_bar_setup(A, ComplexKind::Unnormalized), n_max + 1, BarVariant::B, budget);
  const int dA = A->dim();
  std::vector<SparseMatrix<Scalar>> comp, defect;
  bool identity = true;
  for (int n = 0; n <= n_max + 1; ++n) {
    SparseMatrix<Scalar> m(cA.dim(n), cA.dim(n));
    std::vector<int> p(static_cast<std::size_t>(n) + 1), u(p.size());
    for (int j = 0; j < cA.dim(n); ++j) {
      auto t = cA.tensor(n, j);
      std::vector<std::pair<int, Scalar>> acc;
      // iota(a_0) (x) ... (x) iota(a_n) = sum over diagonal positions p_k.
      std::fill(p.begin(), p.end(), 0);
      while (true) {
        for (int k = 0; k <= n; ++k) u[k] = (p[k] * N + p[k]) * dA + t[k];
        if (auto w = trace_tensor(N, dA, u)) acc.emplace_back(cA.index(n, *w), Scalar(1));
        int k = 0;
        while (k <= n && ++p[k] == N) p[k++] = 0;
        if (k > n) break;
      }
      m.set_col(j, canonicalize(std::move(acc)));
    }
    SparseMatrix<Scalar> nid = SparseMatrix<Scalar>::identity(cA.dim(n)).scaled(Scalar(N));
    if (!(m == nid)) identity = false;
    defect.push_back(m - nid);
    comp.push_back(std::move(m));
  }
  r.chain_level_identity = identity;
  r.composite_ranks = induced_ranks(cA.complex(), cA.complex(), make_chain_map(comp), n_max);
  r.defect_ranks = induced_ranks(cA.complex(), cA.complex(), make_chain_map(defect), n_max);
  auto MN = share(matrix_algebra(*A, N));
  HochschildOptions opt;
  opt.representatives = false;
  opt.budget = budget;
  r.dims_A = hh(A, n_max, opt).dims();
  r.dims_MN = hh(MN, n_max, opt).dims();
  r.ok = r.dims_A == r.dims_MN;
  for (int n = 0; n <= n_max; ++n)
    r.ok = r.ok && r.defect_ranks[n] == 0 && static_cast<int>(r.composite_ranks[n]) == r.dims_A[n];
  return r;
}

}  // namespace cychom
