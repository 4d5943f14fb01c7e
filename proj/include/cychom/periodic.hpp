#pragma once

// Periodic cyclic homology of finite-dimensional algebras (block count of
// A/rad, cross-checked by S-stabilization), the nonunital variant through A+,
// and the structural checks built on it: excision, direct sums, maps on
// cyclic homology, and (weakly) spectrum-preserving morphisms.

#include <optional>
#include <string>
#include <vector>

#include "cychom/cyclic.hpp"
#include "cychom/spectrum.hpp"

namespace cychom {

/// Chain windows larger than this are not used for the stabilization cross-check.
inline std::size_t default_stabilization_budget() { return std::min<std::size_t>(default_budget_dims(), 150'000); }

enum class HPMode { RadicalShortcut, Stabilization, Both };

inline std::string to_string(HPMode m) {
  switch (m) {
    case HPMode::RadicalShortcut: return "radical_shortcut";
    case HPMode::Stabilization: return "stabilization";
    case HPMode::Both: return "both";
  }
  return "?";
}

struct HPReport {
  std::string algebra;
  int even_dim = 0, odd_dim = 0;
  std::string method;              // which answer the dims come from
  int blocks = 0;                  // Wedderburn block count of A/rad
  std::optional<Stabilization> stabilization;
  bool inconclusive = false;       // stabilization did not settle within the cutoff
  bool agree = true;               // both methods ran, settled, and matched
  std::string note;
};

inline HPReport hp(AlgebraPtr A, HPMode mode = HPMode::Both, int cutoff = 5,
                   std::size_t budget = default_stabilization_budget(), ComplexKind kind = ComplexKind::Reduced) {
  if (!A->is_unital()) throw NonUnital("hp needs a unital algebra; use hp_nonunital");
  if (mode != HPMode::RadicalShortcut && cutoff < 4) throw InvalidArgument("stabilization needs cutoff at least 4");
  HPReport r;
  r.algebra = A->name();
  r.blocks = block_count(*A);
  r.even_dim = r.blocks;
  r.odd_dim = 0;
  r.method = "radical_shortcut";
  if (mode == HPMode::RadicalShortcut) return r;
  try {
    r.stabilization = hp_stabilization(A, cutoff, kind, budget);
  } catch (const SizeOverflow& e) {
    if (mode == HPMode::Stabilization) throw;
    r.note = std::string("stabilization skipped: ") + e.what();
    return r;
  }
  const auto& st = *r.stabilization;
  const bool settled = st.even_stable && st.odd_stable;
  if (!settled) {
    r.inconclusive = true;
    r.note = "S-images did not settle within cutoff " + std::to_string(cutoff) + "; radical answer reported";
    return r;
  }
  r.agree = st.even_dim == r.blocks && st.odd_dim == 0;
  if (mode == HPMode::Stabilization) {
    r.even_dim = st.even_dim;
    r.odd_dim = st.odd_dim;
    r.method = "stabilization";
  } else {
    r.method = "both";
  }
  if (!r.agree) r.note = "stabilization and radical shortcut disagree";
  return r;
}

/// HP of a possibly nonunital algebra: HP(A+) with the summand HP(Q) removed.
inline HPReport hp_nonunital(const FDAlgebra& A, HPMode mode = HPMode::Both, int cutoff = 5,
                             std::size_t budget = default_stabilization_budget()) {
  FDAlgebra bare(A.field_order(), A.labels(), A.products(), std::nullopt, A.name());
  HPReport r = hp(share(unitalization(bare)), mode, cutoff, budget);
  r.algebra = A.name();
  r.even_dim -= 1;
  r.blocks -= 1;
  if (r.stabilization) {
    r.stabilization->even_dim -= 1;
    auto& rk = r.stabilization->rank_S;
    for (std::size_t n = 2; n < rk.size(); n += 2) rk[n] = rk[n] > 0 ? rk[n] - 1 : 0;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Excision.

struct ExcisionNode {
  std::string name;
  int dim = 0;
  std::size_t rank_in = 0, rank_out = 0;
  bool exact = false;
};

struct ExcisionReport {
  HPReport ideal, algebra, quotient;
  std::size_t rank_inclusion = 0, rank_projection = 0, rank_composite = 0;
  std::vector<ExcisionNode> nodes;  // HP_0(J), HP_0(A), HP_0(A/J), HP_1(J), HP_1(A), HP_1(A/J)
  bool exact = true;
};

namespace detail {

/// HH_0 of B/rad B, the degree-zero model of HP_0(B): the quotient A/rad, its
/// commutator subspace, and the projection from B.
struct TraceModel {
  std::shared_ptr<const Quotient> semisimple;
  Subspace<Scalar> commutators;
  int dim = 0;
};

inline TraceModel trace_model(const FDAlgebra& B) {
  TraceModel m;
  Subspace<Scalar> rad = jacobson_radical(B);
  if (rad.dim() == B.dim()) return m;
  m.semisimple = std::make_shared<const Quotient>(quotient_by(B, rad));
  const FDAlgebra& S = m.semisimple->algebra;
  m.commutators = Subspace<Scalar>(S.dim());
  for (int i = 0; i < S.dim(); ++i)
    for (int j = 0; j < S.dim(); ++j)
      m.commutators.insert(axpy(S.basis_product(i, j), Scalar(-1), S.basis_product(j, i)));
  m.dim = S.dim() - m.commutators.dim();
  return m;
}

/// Rank of the map V -> HH_0(B/rad) sending vectors of B (given in B's basis).
inline std::size_t trace_rank(const TraceModel& m, const std::vector<Element>& vecs) {
  if (!m.semisimple) return 0;
  Subspace<Scalar> img = m.commutators;
  for (const auto& v : vecs) img.insert(m.semisimple->projection.apply(v));
  return static_cast<std::size_t>(img.dim() - m.commutators.dim());
}

}  // namespace detail

/// Six-term sequence HP_0(J) -> HP_0(A) -> HP_0(A/J) -> HP_1(J) -> HP_1(A) ->
/// HP_1(A/J) -> HP_0(J).  The maps are read on HH_0 of the semisimple
/// quotients, which computes HP_0 naturally; the odd groups vanish.
inline ExcisionReport excision_check(const TwoSidedIdeal& J, HPMode mode = HPMode::Both, int cutoff = 5,
                                     std::size_t budget = default_stabilization_budget()) {
  const FDAlgebra& A = *J.parent;
  if (!A.is_unital()) throw NonUnital("excision check needs a unital ambient algebra");
  if (!absorbs(A, J.space)) throw ValidationError("J is not a two-sided ideal");
  ExcisionReport r;
  const bool proper = J.space.dim() < A.dim();
  const bool nonzero = J.space.dim() > 0;
  r.ideal = nonzero ? hp_nonunital(algebra_on_subspace(A, J.space, A.name() + " ideal"), mode, cutoff, budget)
                    : HPReport{"0", 0, 0, "trivial"};
  r.algebra = hp(J.parent, mode, cutoff, budget);
  if (proper) {
    Quotient q = quotient_by(A, J.space);
    r.quotient = hp(share(q.algebra), mode, cutoff, budget);
    auto mA = detail::trace_model(A);
    auto mQ = detail::trace_model(q.algebra);
    r.rank_inclusion = detail::trace_rank(mA, J.space.basis());
    std::vector<Element> images;
    for (int i = 0; i < A.dim(); ++i) images.push_back(q.projection.col(i));
    r.rank_projection = detail::trace_rank(mQ, images);
    std::vector<Element> jimages;
    for (const auto& v : J.space.basis()) jimages.push_back(q.projection.apply(v));
    r.rank_composite = detail::trace_rank(mQ, jimages);
    if (mA.dim != r.algebra.even_dim || mQ.dim != r.quotient.even_dim)
      throw Error("InternalError", "degree-zero model disagrees with HP");
  } else {
    r.quotient = HPReport{"0", 0, 0, "trivial"};
    auto mA = detail::trace_model(A);
    r.rank_inclusion = detail::trace_rank(mA, J.space.basis());
  }
  const std::size_t i0 = r.rank_inclusion, p0 = r.rank_projection;
  auto add = [&](std::string name, int dim, std::size_t in, std::size_t out, std::size_t comp) {
    ExcisionNode n{std::move(name), dim, in, out, comp == 0 && static_cast<int>(in + out) == dim};
    r.exact = r.exact && n.exact;
    r.nodes.push_back(std::move(n));
  };
  // Connecting maps land in or leave the odd groups, which are zero here.
  add("HP_0(J)", r.ideal.even_dim, 0, i0, 0);
  add("HP_0(A)", r.algebra.even_dim, i0, p0, r.rank_composite);
  add("HP_0(A/J)", r.quotient.even_dim, p0, 0, 0);
  add("HP_1(J)", r.ideal.odd_dim, 0, 0, 0);
  add("HP_1(A)", r.algebra.odd_dim, 0, 0, 0);
  add("HP_1(A/J)", r.quotient.odd_dim, 0, 0, 0);
  return r;
}

// ---------------------------------------------------------------------------
// Direct sums.

inline ChainComplex direct_sum_complex(const ChainComplex& C, const ChainComplex& D) {
  const int top = std::min(C.top(), D.top());
  std::vector<int> dims;
  std::vector<BoundaryPtr> d;
  for (int n = 0; n <= top; ++n) {
    dims.push_back(C.dim(n) + D.dim(n));
    if (n == 0) {
      d.push_back(nullptr);
      continue;
    }
    SparseMatrix<Scalar> m(C.dim(n - 1) + D.dim(n - 1), dims.back());
    m.add_block(0, 0, C.d(n));
    m.add_block(C.dim(n - 1), C.dim(n), D.d(n));
    d.push_back(make_boundary(std::move(m)));
  }
  return ChainComplex(std::move(dims), std::move(d));
}

struct DirectSumReport {
  std::vector<int> hh_a, hh_b, hh_sum, hc_a, hc_b, hc_sum;
  std::vector<std::size_t> inclusion_ranks;  // rank of HH(A) (+) HH(B) -> HH(A (+) B)
  HPReport hp_a, hp_b, hp_sum;
  bool hh_additive = false, hc_additive = false, hp_additive = false, inclusions_iso = false;
  bool ok = false;
};

inline DirectSumReport direct_sum_check(AlgebraPtr A, AlgebraPtr B, int n_max,
                                        std::size_t budget = default_budget_dims()) {
  if (!A->is_unital() || !B->is_unital()) throw NonUnital("direct sum check needs unital summands");
  auto S = share(direct_sum(*A, *B));
  DirectSumReport r;
  HochschildOptions opt;
  opt.representatives = false;
  opt.budget = budget;
  r.hh_a = hh(A, n_max, opt).dims();
  r.hh_b = hh(B, n_max, opt).dims();
  r.hh_sum = hh(S, n_max, opt).dims();
  r.hc_a = hc(A, n_max, opt).dims();
  r.hc_b = hc(B, n_max, opt).dims();
  r.hc_sum = hc(S, n_max, opt).dims();
  r.hh_additive = r.hc_additive = true;
  for (int n = 0; n <= n_max; ++n) {
    r.hh_additive = r.hh_additive && r.hh_sum[n] == r.hh_a[n] + r.hh_b[n];
    r.hc_additive = r.hc_additive && r.hc_sum[n] == r.hc_a[n] + r.hc_b[n];
  }
  r.hp_a = hp(A);
  r.hp_b = hp(B);
  r.hp_sum = hp(S);
  r.hp_additive = r.hp_sum.even_dim == r.hp_a.even_dim + r.hp_b.even_dim &&
                  r.hp_sum.odd_dim == r.hp_a.odd_dim + r.hp_b.odd_dim;
  // Inclusions A -> A (+) B and B -> A (+) B on the unnormalized complexes.
  const int dA = A->dim(), dB = B->dim();
  std::vector<std::tuple<int, int, Scalar>> ta, tb;
  for (int i = 0; i < dA; ++i) ta.emplace_back(i, i, Scalar(1));
  for (int i = 0; i < dB; ++i) tb.emplace_back(dA + i, i, Scalar(1));
  LinearMap iA = make_linear_map(A, S, SparseMatrix<Scalar>::from_triplets(dA + dB, dA, std::move(ta)));
  LinearMap iB = make_linear_map(B, S, SparseMatrix<Scalar>::from_triplets(dA + dB, dB, std::move(tb)));
  BarComplex cA(make_bar_setup(A, ComplexKind::Unnormalized), n_max + 1, BarVariant::B, budget);
  BarComplex cB(make_bar_setup(B, ComplexKind::Unnormalized), n_max + 1, BarVariant::B, budget);
  BarComplex cS(make_bar_setup(S, ComplexKind::Unnormalized), n_max + 1, BarVariant::B, budget);
  ChainMap fA = tensor_power_map(iA, cA, cS, n_max), fB = tensor_power_map(iB, cB, cS, n_max);
  std::vector<SparseMatrix<Scalar>> mats;
  for (int n = 0; n <= n_max; ++n) {
    SparseMatrix<Scalar> m(cS.dim(n), cA.dim(n) + cB.dim(n));
    m.add_block(0, 0, fA.at(n));
    m.add_block(0, cA.dim(n), fB.at(n));
    mats.push_back(std::move(m));
  }
  r.inclusion_ranks =
      induced_ranks(direct_sum_complex(cA.complex(), cB.complex()), cS.complex(), make_chain_map(std::move(mats)), n_max);
  r.inclusions_iso = true;
  for (int n = 0; n <= n_max; ++n)
    r.inclusions_iso = r.inclusions_iso && static_cast<int>(r.inclusion_ranks[n]) == r.hh_sum[n];
  r.ok = r.hh_additive && r.hc_additive && r.hp_additive && r.inclusions_iso;
  return r;
}

// ---------------------------------------------------------------------------
// Maps on cyclic homology.

/// Ranks of HC_n(phi) for a unital multiplicative phi, from the tensor-power
/// map applied column by column on the unnormalized cyclic complexes.
inline std::vector<std::size_t> induced_ranks_hc(const LinearMap& phi, int n_max,
                                                 std::size_t budget = default_budget_dims()) {
  if (!phi.multiplicative || !phi.unital) throw NotMultiplicative("maps on cyclic homology need a unital algebra map");
  CyclicComplex src(phi.source, n_max + 1, ComplexKind::Unnormalized, budget);
  CyclicComplex dst(phi.target, n_max + 1, ComplexKind::Unnormalized, budget);
  ChainMap f = tensor_power_map(phi, src.bar(), dst.bar(), n_max + 1);
  std::vector<SparseMatrix<Scalar>> mats;
  for (int n = 0; n <= n_max; ++n) {
    SparseMatrix<Scalar> m(dst.total().dim(n), src.total().dim(n));
    for (int k = 0; k < src.blocks(n); ++k) m.add_block(dst.offset(n, k), src.offset(n, k), f.at(n - 2 * k));
    mats.push_back(std::move(m));
  }
  return induced_ranks(src.total(), dst.total(), make_chain_map(std::move(mats)), n_max);
}

// ---------------------------------------------------------------------------
// Spectrum-preserving morphisms.

struct SpectrumPreservingReport {
  PrimRelation relation;
  bool spectrum_preserving = false;
  std::optional<HPReport> hp_source, hp_target;
  bool hp_agree = false;
};

inline SpectrumPreservingReport spectrum_preserving_check(const LinearMap& phi, const WedderburnOptions& opt = {}) {
  auto [sL, sJ] = common_spectra(*phi.source, *phi.target, opt);
  SpectrumPreservingReport r;
  r.relation = prim_relation(phi.matrix, sL, sJ);
  r.spectrum_preserving = r.relation.bijective;
  if (r.spectrum_preserving) {
    r.hp_source = phi.source->is_unital() ? hp(phi.source) : hp_nonunital(*phi.source);
    r.hp_target = phi.target->is_unital() ? hp(phi.target) : hp_nonunital(*phi.target);
    r.hp_agree = r.hp_source->even_dim == r.hp_target->even_dim && r.hp_source->odd_dim == r.hp_target->odd_dim;
  }
  return r;
}

struct LayerVerdict {
  int k = 0;
  int source_dim = 0, target_dim = 0;
  PrimRelation relation;
  bool ok = false;
};

struct WeakSpectrumReport {
  std::vector<LayerVerdict> layers;
  bool weakly_spectrum_preserving = false;
  std::optional<int> failing_layer;
  std::optional<HPReport> hp_source, hp_target;
  bool hp_agree = false;
};

namespace detail {

/// hi/lo as an algebra, with the map from vectors of the ambient algebra lying in hi.
struct Layer {
  std::optional<FDAlgebra> algebra;
  Subspace<Scalar> hi;
  std::shared_ptr<const Quotient> quotient;
  Element coords(const Element& x) const { return quotient->projection.apply(dense_to_element(hi.coordinates(x))); }
  Element lift(int i) const { return hi.basis()[quotient->kept[i]]; }
};

inline Layer make_layer(const FDAlgebra& A, const Subspace<Scalar>& hi, const Subspace<Scalar>& lo) {
  Layer L;
  L.hi = hi;
  if (hi.dim() == lo.dim()) return L;
  FDAlgebra sub = algebra_on_subspace(A, hi, A.name() + " layer");
  Subspace<Scalar> lo_c(hi.dim());
  for (const auto& v : lo.basis()) lo_c.insert(dense_to_element(hi.coordinates(v)));
  L.quotient = std::make_shared<const Quotient>(quotient_by(sub, lo_c));
  L.algebra = L.quotient->algebra;
  return L;
}

}  // namespace detail

/// Increasing chains 0 = L_0 <= ... <= L_n = L and 0 = J_0 <= ... <= J_n = J.
inline WeakSpectrumReport weakly_spectrum_preserving_check(const LinearMap& phi,
                                                           const std::vector<Subspace<Scalar>>& Lf,
                                                           const std::vector<Subspace<Scalar>>& Jf,
                                                           const WedderburnOptions& opt = {}) {
  const FDAlgebra& L = *phi.source;
  const FDAlgebra& J = *phi.target;
  if (Lf.size() != Jf.size() || Lf.size() < 2) throw InvalidArgument("filtrations need the same length, at least 2");
  auto check_chain = [](const FDAlgebra& A, const std::vector<Subspace<Scalar>>& F, const char* who) {
    if (F.front().dim() != 0 || F.back().dim() != A.dim())
      throw ValidationError(std::string(who) + " filtration must run from 0 to the algebra");
    for (std::size_t k = 0; k < F.size(); ++k) {
      if (!absorbs(A, F[k])) throw ValidationError(std::string(who) + " filtration term is not an ideal");
      if (k > 0 && !F[k].contains(F[k - 1])) throw ValidationError(std::string(who) + " filtration is not increasing");
    }
  };
  check_chain(L, Lf, "source");
  check_chain(J, Jf, "target");
  for (std::size_t k = 0; k < Lf.size(); ++k)
    for (const auto& v : Lf[k].basis())
      if (!Jf[k].contains(phi.matrix.apply(v)))
        throw FiltrationNotRespected("phi(L_" + std::to_string(k) + ") is not inside J_" + std::to_string(k));
  WeakSpectrumReport r;
  r.weakly_spectrum_preserving = true;
  for (std::size_t k = 1; k < Lf.size(); ++k) {
    LayerVerdict v;
    v.k = static_cast<int>(k);
    auto lL = detail::make_layer(L, Lf[k], Lf[k - 1]);
    auto lJ = detail::make_layer(J, Jf[k], Jf[k - 1]);
    v.source_dim = lL.algebra ? lL.algebra->dim() : 0;
    v.target_dim = lJ.algebra ? lJ.algebra->dim() : 0;
    if (lL.algebra && lJ.algebra) {
      SparseMatrix<Scalar> m(lJ.algebra->dim(), lL.algebra->dim());
      for (int i = 0; i < lL.algebra->dim(); ++i) m.set_col(i, lJ.coords(phi.matrix.apply(lL.lift(i))));
      auto [sL, sJ] = common_spectra(*lL.algebra, *lJ.algebra, opt);
      v.relation = prim_relation(m, sL, sJ);
    } else {
      // A zero layer has empty spectrum; the other side must have none either.
      auto count = [&](const detail::Layer& l) {
        return l.algebra ? static_cast<int>(wedderburn_blocks(*l.algebra, opt).prim_points.size()) : 0;
      };
      v.relation.prim_source = count(lL);
      v.relation.prim_target = count(lJ);
      v.relation.is_function = v.relation.prim_target == 0;
      v.relation.bijective = v.relation.prim_source == 0 && v.relation.prim_target == 0;
    }
    v.ok = v.relation.bijective;
    if (!v.ok && !r.failing_layer) r.failing_layer = v.k;
    r.weakly_spectrum_preserving = r.weakly_spectrum_preserving && v.ok;
    r.layers.push_back(std::move(v));
  }
  if (r.weakly_spectrum_preserving) {
    r.hp_source = L.is_unital() ? hp(phi.source) : hp_nonunital(L);
    r.hp_target = J.is_unital() ? hp(phi.target) : hp_nonunital(J);
    r.hp_agree = r.hp_source->even_dim == r.hp_target->even_dim && r.hp_source->odd_dim == r.hp_target->odd_dim;
  }
  return r;
}

/// E1 totals of the standard filtration against HP.
struct E1Comparison {
  E1Table table;
  HPReport hp;
  bool agree = false;
};

inline E1Comparison compare_e1_with_hp(AlgebraPtr A, const WedderburnOptions& opt = {}) {
  E1Comparison c;
  c.table = spectral_e1(standard_filtration(*A, opt), opt);
  c.hp = hp(A);
  c.agree = c.table.even_total == c.hp.even_dim && c.table.odd_total == c.hp.odd_dim;
  return c;
}

}  // namespace cychom
