#pragma once

// Chern characters of idempotents and invertibles in cyclic homology, the
// classes eta_q and v_q, and trace pairings.  Everything lives in the
// unnormalized cyclic total complex, where unital algebra maps and Tr_* act
// tensor by tensor.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cychom/cyclic.hpp"
#include "cychom/group.hpp"

namespace cychom {

/// A chain of the unnormalized cyclic total complex of an algebra.
struct CyclicClass {
  std::string algebra;
  int degree = 0;
  SparseVec<Scalar> chain;
  std::shared_ptr<const CyclicComplex> complex;  // window reaches degree + 1
  bool is_cycle = false;
};

inline std::shared_ptr<const CyclicComplex> unnormalized_cyclic(AlgebraPtr A, int top,
                                                                std::size_t budget = default_budget_dims()) {
  return std::make_shared<const CyclicComplex>(std::move(A), top, ComplexKind::Unnormalized, budget);
}

inline bool is_total_cycle(const CyclicComplex& cc, int n, const SparseVec<Scalar>& w) {
  return n == 0 || cc.total().d(n).apply(w).empty();
}

/// Cycle w' of degree n + 2 with S w' = w.  The top component is the
/// canonical solution c of b c = -B(top of w).
inline SparseVec<Scalar> lift_through_S(const CyclicComplex& cc, int n, const SparseVec<Scalar>& w) {
  if (n + 2 > cc.top()) throw InvalidArgument("lift needs the window to reach degree n + 2");
  if (!is_total_cycle(cc, n, w)) throw InvalidArgument("only cycles can be lifted through S");
  auto rhs = scale(cc.B(n).apply(cc.component(n, 0, w)), Scalar(-1));
  auto c = solve(cc.hochschild().d(n + 2), rhs);
  if (!c) throw Error("InternalError", "b c = -B w has no solution");
  std::vector<SparseVec<Scalar>> parts{*c};
  for (int k = 0; k < cc.blocks(n); ++k) parts.push_back(cc.component(n, k, w));
  return canonicalize(cc.assemble(n + 2, parts));
}

/// eta_q in HC_{2q} of the ground field, with S^q eta_q = 1 checked exactly.
inline CyclicClass eta_class(int q) {
  if (q < 0) throw InvalidArgument("eta_q needs q >= 0");
  auto cc = unnormalized_cyclic(share(ground_field()), 2 * q + 1);
  SparseVec<Scalar> w{{0, Scalar(1)}};
  for (int j = 0; j < q; ++j) w = lift_through_S(*cc, 2 * j, w);
  SparseVec<Scalar> down = w;
  for (int j = q; j > 0; --j) down = apply_S(*cc, 2 * j, down);
  if (!(down == SparseVec<Scalar>{{0, Scalar(1)}})) throw Error("InternalError", "S^q eta_q differs from 1");
  return CyclicClass{"Q", 2 * q, w, cc, is_total_cycle(*cc, 2 * q, w)};
}

// ---------------------------------------------------------------------------
// K-class representatives.

struct KClassRep {
  enum class Kind { Idempotent, Invertible };
  Kind kind = Kind::Idempotent;
  AlgebraPtr algebra;   // A
  AlgebraPtr matrices;  // M_N(A); basis (p N + q) dA + i
  int size = 1;
  Element element;
  std::optional<Element> inverse;
};

inline std::string to_string(KClassRep::Kind k) { return k == KClassRep::Kind::Idempotent ? "idempotent" : "invertible"; }

inline KClassRep make_idempotent(AlgebraPtr A, int N, Element e) {
  auto M = share(matrix_algebra(*A, N));
  e = canonicalize(std::move(e));
  if (!(M->mul(e, e) == e)) throw NotIdempotent("e^2 differs from e");
  return KClassRep{KClassRep::Kind::Idempotent, std::move(A), std::move(M), N, std::move(e), std::nullopt};
}

inline KClassRep make_invertible(AlgebraPtr A, int N, Element u) {
  if (!A->is_unital()) throw NonUnital("invertibles need a unital algebra");
  auto M = share(matrix_algebra(*A, N));
  u = canonicalize(std::move(u));
  auto x = solve(M->left_mult(u), M->unit());
  if (!x || !(M->mul(*x, u) == M->unit())) throw NotInvertible("no two-sided inverse");
  return KClassRep{KClassRep::Kind::Invertible, std::move(A), std::move(M), N, std::move(u), *x};
}

namespace detail {

/// Tr_*(m_0 (x) ... (x) m_n) for matrices over A, written in the bar basis of A.
inline void trace_expand(const std::vector<const Element*>& ms, int N, int dA, const BarComplex& cA, const Scalar& coef,
                         std::vector<std::pair<int, Scalar>>& acc) {
  const int n = static_cast<int>(ms.size()) - 1;
  // Terms of each factor grouped by row.
  std::vector<std::vector<std::vector<std::pair<int, Scalar>>>> rows(ms.size(),
                                                                     std::vector<std::vector<std::pair<int, Scalar>>>(N));
  for (std::size_t k = 0; k < ms.size(); ++k)
    for (const auto& [x, c] : *ms[k]) rows[k][(x / dA) / N].emplace_back(x % (N * dA), c);
  std::vector<int> t(ms.size());
  std::function<void(int, int, int, Scalar)> rec = [&](int k, int start, int row, Scalar c) {
    if (k > n) {
      if (row == start) acc.emplace_back(cA.index(n, t), c);
      return;
    }
    for (const auto& [qi, x] : rows[k][row]) {
      t[k] = qi % dA;
      rec(k + 1, start, qi / dA, c * x);
    }
  };
  for (int p = 0; p < N; ++p) rec(0, p, p, coef);
}

/// Image of a source cyclic chain under the unital map sending basis j to
/// images[j] in M_N(A), followed by Tr_*.
inline SparseVec<Scalar> push_and_trace(const CyclicComplex& src, const CyclicComplex& dst, int n,
                                        const SparseVec<Scalar>& w, const std::vector<Element>& images, int N) {
  const int dA = dst.bar().algebra().dim();
  std::vector<SparseVec<Scalar>> parts;
  for (int k = 0; k < src.blocks(n); ++k) {
    const int deg = n - 2 * k;
    std::vector<std::pair<int, Scalar>> acc;
    for (const auto& [idx, c] : src.component(n, k, w)) {
      std::vector<const Element*> ms;
      for (int j : src.bar().tensor(deg, idx)) ms.push_back(&images.at(j));
      trace_expand(ms, N, dA, dst.bar(), c, acc);
    }
    parts.push_back(canonicalize(std::move(acc)));
  }
  return canonicalize(dst.assemble(n, parts));
}

inline Element matrix_power(const FDAlgebra& M, const Element& u, int k) {
  Element out = M.unit();
  for (int i = 0; i < k; ++i) out = M.mul(out, u);
  return out;
}

}  // namespace detail

/// Ch_q(e) in HC_{2q}(A).  The nonunital map lambda -> lambda e is extended to
/// the unitalization Q (+) Q 1 = Q[e], sending 1 - e to 1 - e, and eta_q is
/// carried there as the class with S^q = [e].
inline CyclicClass chern_idempotent(const KClassRep& rep, int q, std::size_t budget = default_budget_dims()) {
  if (rep.kind != KClassRep::Kind::Idempotent) throw InvalidArgument("expected an idempotent representative");
  if (q < 0) throw InvalidArgument("q must be nonnegative");
  if (!(rep.matrices->mul(rep.element, rep.element) == rep.element)) throw NotIdempotent("e^2 differs from e");
  auto U = share(functions_on_points(2));
  auto cu = unnormalized_cyclic(U, 2 * q, budget);
  SparseVec<Scalar> w{{0, Scalar(1)}};
  for (int j = 0; j < q; ++j) w = lift_through_S(*cu, 2 * j, w);
  if (!rep.algebra->is_unital()) throw NonUnital("the cyclic complex needs a unital algebra");
  std::vector<Element> images{rep.element, axpy(rep.matrices->unit(), Scalar(-1), rep.element)};
  auto ca = unnormalized_cyclic(rep.algebra, 2 * q + 1, budget);
  auto chain = detail::push_and_trace(*cu, *ca, 2 * q, w, images, rep.size);
  return CyclicClass{rep.algebra->name(), 2 * q, chain, ca, is_total_cycle(*ca, 2 * q, chain)};
}

inline constexpr int kDefaultOrderSearch = 64;

/// Ch_q(u) in HC_{2q+1}(A), through Q[Z/n] with z -> u where u^n = 1.
/// v_0 = z^{-1} (x) z and v_{q+1} is the canonical S-lift of v_q.
inline CyclicClass chern_invertible(const KClassRep& rep, int q, std::optional<int> order_bound = std::nullopt,
                                    std::size_t budget = default_budget_dims()) {
  if (rep.kind != KClassRep::Kind::Invertible) throw InvalidArgument("expected an invertible representative");
  if (q < 0) throw InvalidArgument("q must be nonnegative");
  const FDAlgebra& M = *rep.matrices;
  int n = 0;
  if (order_bound) {
    if (*order_bound < 1) throw InvalidArgument("order bound must be positive");
    if (detail::matrix_power(M, rep.element, *order_bound) == M.unit()) n = *order_bound;
  } else {
    Element p = rep.element;
    for (int k = 1; k <= kDefaultOrderSearch && n == 0; ++k, p = M.mul(p, rep.element))
      if (p == M.unit()) n = k;
  }
  if (n == 0) throw OrderUnbounded("u has no finite order within the surrogate range");
  auto G = cyclic_group(n);
  auto L = share(group_algebra(G));
  const int z = n == 1 ? G.identity() : 1;
  if (G.element_order(z) != n) throw Error("InternalError", "cyclic group generator expected at index 1");
  std::vector<Element> images(static_cast<std::size_t>(n));
  int g = G.identity();
  Element p = M.unit();
  for (int k = 0; k < n; ++k, g = G.mul(g, z), p = M.mul(p, rep.element)) images[g] = p;
  int zinv = 0;
  for (int h = 0; h < n; ++h)
    if (G.mul(h, z) == G.identity()) zinv = h;
  auto cl = unnormalized_cyclic(L, 2 * q + 1, budget);
  SparseVec<Scalar> w{{cl->bar().index(1, {zinv, z}), Scalar(1)}};
  for (int j = 0; j < q; ++j) w = lift_through_S(*cl, 2 * j + 1, w);
  auto ca = unnormalized_cyclic(rep.algebra, 2 * q + 2, budget);
  auto chain = detail::push_and_trace(*cl, *ca, 2 * q + 1, w, images, rep.size);
  return CyclicClass{rep.algebra->name(), 2 * q + 1, chain, ca, is_total_cycle(*ca, 2 * q + 1, chain)};
}

/// Whether the chain is a boundary in the total complex.
inline bool is_zero_class(const CyclicClass& c) { return is_boundary(c.complex->total(), c.degree, c.chain); }

inline bool same_class(const CyclicClass& a, const CyclicClass& b) {
  if (a.degree != b.degree || a.complex->bar().algebra().dim() != b.complex->bar().algebra().dim())
    throw InvalidArgument("classes live in different groups");
  return is_boundary(a.complex->total(), a.degree, axpy(a.chain, Scalar(-1), b.chain));
}

/// S applied to the class as a chain.
inline CyclicClass apply_S(const CyclicClass& c) {
  return CyclicClass{c.algebra, c.degree - 2, apply_S(*c.complex, c.degree, c.chain), c.complex, c.is_cycle};
}

/// tau(S^q w) for a class of even degree 2q; tau a trace on A.
inline Scalar pair_with_trace(const CyclicClass& c, const SparseVec<Scalar>& tau) {
  if (c.degree % 2 != 0) throw InvalidArgument("traces pair with even degrees");
  SparseVec<Scalar> w = c.chain;
  for (int n = c.degree; n >= 2; n -= 2) w = apply_S(*c.complex, n, w);
  return apply_functional(tau, w);
}

/// Pairing of an HH_0 class, given by an element of A.
inline Scalar pair_with_trace(const Element& a, const SparseVec<Scalar>& tau) { return apply_functional(tau, a); }

/// Class-sum traces of a group algebra, scaled by |G| / |C| so that the
/// pairing with a primitive idempotent reads a character value.
inline std::vector<SparseVec<Scalar>> class_traces(const FiniteGroup& G) {
  std::vector<SparseVec<Scalar>> out;
  const auto meta = group_metadata(G);
  for (const auto& cls : meta.classes) {
    std::vector<std::pair<int, Scalar>> acc;
    Scalar w(Rational(G.order(), static_cast<long long>(cls.members.size())));
    for (int g : cls.members) acc.emplace_back(g, w);
    out.push_back(canonicalize(std::move(acc)));
  }
  return out;
}

/// Matrix trace of M_N(Q): sum of diagonal coordinates.
inline SparseVec<Scalar> matrix_trace(int N) {
  SparseVec<Scalar> t;
  for (int p = 0; p < N; ++p) t.emplace_back(p * N + p, Scalar(1));
  return t;
}

}  // namespace cychom
