#pragma once

// Finite-dimensional associative algebras by structure constants, with
// their ideals, morphisms, bimodules and finite group actions.

#include <algorithm>
#include <array>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cychom/group.hpp"
#include "cychom/linalg.hpp"
#include "cychom/sparse.hpp"

namespace cychom {

/// Elements are sparse coordinate vectors in the algebra's basis.
using Element = SparseVec<Scalar>;

inline Element basis_element(int i) { return {{i, Scalar(1)}}; }

inline Element dense_to_element(const std::vector<Scalar>& v) {
  Element e;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (!v[i].is_zero()) e.emplace_back(i, v[i]);
  return e;
}

inline std::vector<Scalar> element_to_dense(const Element& e, int dim) {
  std::vector<Scalar> v(dim);
  for (const auto& [i, x] : e) v[i] = x;
  return v;
}

struct ValidationReport {
  bool ok = true;
  bool associative = true;
  std::optional<std::array<int, 3>> failing_triple;
  bool unit_ok = true;
  std::optional<int> failing_unit_index;
  std::string message;
};

class FDAlgebra;
using AlgebraPtr = std::shared_ptr<const FDAlgebra>;

class FDAlgebra {
 public:
  FDAlgebra() = default;

  /// `products[i*dim + j]` is e_i e_j.  Shapes are checked; axioms are not
  /// (see validate).
  FDAlgebra(int field_order, std::vector<std::string> labels, std::vector<Element> products,
            std::optional<Element> unit, std::string name = {})
      : order_(detail::canonical_order(field_order)),
        labels_(std::move(labels)),
        products_(std::move(products)),
        unit_(std::move(unit)),
        name_(std::move(name)) {
    const int d = dim();
    if (d < 1) throw ValidationError("algebra dimension must be at least 1");
    if (static_cast<int>(products_.size()) != d * d) throw ValidationError("structure tensor has wrong size");
    for (auto& p : products_) {
      for (const auto& [k, v] : p) {
        if (k < 0 || k >= d) throw ValidationError("structure constant index out of range");
        check_order(v);
      }
      p = canonicalize(std::move(p));
    }
    if (unit_) {
      for (const auto& [k, v] : *unit_) {
        if (k < 0 || k >= d) throw ValidationError("unit index out of range");
        check_order(v);
      }
      unit_ = canonicalize(std::move(*unit_));
    }
  }

  int field_order() const { return order_; }
  int dim() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  bool is_unital() const { return unit_.has_value(); }
  const Element& unit() const {
    if (!unit_) throw NonUnital("algebra '" + name_ + "' has no unit");
    return *unit_;
  }
  const std::optional<Element>& unit_opt() const { return unit_; }

  const Element& basis_product(int i, int j) const { return products_[static_cast<std::size_t>(i) * dim() + j]; }
  const std::vector<Element>& products() const { return products_; }

  Element mul(const Element& a, const Element& b) const {
    std::vector<std::pair<int, Scalar>> acc;
    for (const auto& [i, x] : a)
      for (const auto& [j, y] : b) {
        Scalar xy = x * y;
        for (const auto& [k, c] : basis_product(i, j)) acc.emplace_back(k, xy * c);
      }
    return canonicalize(std::move(acc));
  }

  /// Matrix of x -> a x.
  SparseMatrix<Scalar> left_mult(const Element& a) const {
    SparseMatrix<Scalar> m(dim(), dim());
    for (int j = 0; j < dim(); ++j) m.set_col(j, mul(a, basis_element(j)));
    return m;
  }
  /// Matrix of x -> x a.
  SparseMatrix<Scalar> right_mult(const Element& a) const {
    SparseMatrix<Scalar> m(dim(), dim());
    for (int j = 0; j < dim(); ++j) m.set_col(j, mul(basis_element(j), a));
    return m;
  }

  bool is_rational() const {
    for (const auto& p : products_)
      for (const auto& [k, v] : p)
        if (!v.is_rational()) return false;
    return true;
  }

  bool is_commutative() const {
    for (int i = 0; i < dim(); ++i)
      for (int j = i + 1; j < dim(); ++j)
        if (basis_product(i, j) != basis_product(j, i)) return false;
    return true;
  }

  /// Same algebra read over the larger field Q(z_target).
  FDAlgebra over_field(int target) const {
    auto lift = [target](Element e) {
      for (auto& [k, v] : e) v = v.lift(target);
      return e;
    };
    std::vector<Element> prods;
    prods.reserve(products_.size());
    for (const auto& p : products_) prods.push_back(lift(p));
    std::optional<Element> u;
    if (unit_) u = lift(*unit_);
    return FDAlgebra(target, labels_, std::move(prods), std::move(u), name_);
  }

 private:
  void check_order(const Scalar& v) const {
    if (v.order() != 1 && order_ % v.order() != 0)
      throw FieldMismatch("structure constant of order " + std::to_string(v.order()) + " in an algebra over order " +
                          std::to_string(order_));
  }

  int order_ = 1;
  std::vector<std::string> labels_;
  std::vector<Element> products_;
  std::optional<Element> unit_;
  std::string name_;
};

inline AlgebraPtr share(FDAlgebra a) { return std::make_shared<const FDAlgebra>(std::move(a)); }

/// Checks associativity on all basis triples and the unit axioms.
inline ValidationReport validate(const FDAlgebra& A) {
  ValidationReport r;
  const int d = A.dim();
  for (int i = 0; i < d && r.associative; ++i)
    for (int j = 0; j < d && r.associative; ++j) {
      const Element& ij = A.basis_product(i, j);
      for (int k = 0; k < d; ++k) {
        if (A.mul(ij, basis_element(k)) != A.mul(basis_element(i), A.basis_product(j, k))) {
          r.associative = false;
          r.failing_triple = std::array<int, 3>{i, j, k};
          r.message = "(e" + std::to_string(i) + " e" + std::to_string(j) + ") e" + std::to_string(k) +
                      " != e" + std::to_string(i) + " (e" + std::to_string(j) + " e" + std::to_string(k) + ")";
          break;
        }
      }
    }
  if (A.is_unital()) {
    const Element& u = A.unit();
    for (int i = 0; i < d; ++i) {
      Element e = basis_element(i);
      if (A.mul(u, e) != e || A.mul(e, u) != e) {
        r.unit_ok = false;
        r.failing_unit_index = i;
        if (r.message.empty()) r.message = "unit fails on basis element " + std::to_string(i);
        break;
      }
    }
  }
  r.ok = r.associative && r.unit_ok;
  return r;
}

inline void require_valid(const FDAlgebra& A) {
  auto r = validate(A);
  if (!r.ok) throw ValidationError(A.name().empty() ? r.message : A.name() + ": " + r.message);
}

/// Solves for a two-sided unit; nullopt when none exists.
inline std::optional<Element> find_unit(const FDAlgebra& A) {
  const int d = A.dim();
  // Unknown u = sum u_k e_k; equations u e_i = e_i and e_i u = e_i.
  std::vector<std::tuple<int, int, Scalar>> trips;
  std::vector<std::pair<int, Scalar>> rhs;
  int row = 0;
  for (int i = 0; i < d; ++i) {
    for (int side = 0; side < 2; ++side) {
      for (int t = 0; t < d; ++t) {
        for (int k = 0; k < d; ++k) {
          const Element& p = side == 0 ? A.basis_product(k, i) : A.basis_product(i, k);
          Scalar c = sparse_at(p, t);
          if (!c.is_zero()) trips.emplace_back(row, k, c);
        }
        if (t == i) rhs.emplace_back(row, Scalar(1));
        ++row;
      }
    }
  }
  auto M = SparseMatrix<Scalar>::from_triplets(row, d, std::move(trips));
  auto sol = solve(M, canonicalize(std::move(rhs)));
  return sol;
}

// ---------------------------------------------------------------------------
// Constructors.

inline FDAlgebra ground_field(int order = 1) {
  return FDAlgebra(order, {"1"}, {basis_element(0)}, basis_element(0), "Q");
}

/// Q[x]/(x^N), basis 1, x, ..., x^(N-1).
inline FDAlgebra truncated_polynomial(int N, int order = 1) {
  if (N < 1) throw InvalidArgument("truncated_polynomial needs N >= 1");
  std::vector<std::string> labels;
  for (int k = 0; k < N; ++k) labels.push_back(k == 0 ? "1" : (k == 1 ? "x" : "x^" + std::to_string(k)));
  std::vector<Element> prods(static_cast<std::size_t>(N) * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i + j < N) prods[i * N + j] = basis_element(i + j);
  return FDAlgebra(order, std::move(labels), std::move(prods), basis_element(0), "Q[x]/(x^" + std::to_string(N) + ")");
}

/// Q^l with orthogonal idempotent basis.
inline FDAlgebra functions_on_points(int l, int order = 1) {
  if (l < 1) throw InvalidArgument("functions_on_points needs l >= 1");
  std::vector<std::string> labels;
  std::vector<Element> prods(static_cast<std::size_t>(l) * l);
  Element unit;
  for (int i = 0; i < l; ++i) {
    labels.push_back("p" + std::to_string(i));
    prods[i * l + i] = basis_element(i);
    unit.emplace_back(i, Scalar(1));
  }
  return FDAlgebra(order, std::move(labels), std::move(prods), unit, "Q^" + std::to_string(l));
}

/// M_N(A), basis E_pq (x) a_i at index (p*N + q)*dim(A) + i.
inline FDAlgebra matrix_algebra(const FDAlgebra& A, int N) {
  if (N < 1) throw InvalidArgument("matrix_algebra needs N >= 1");
  const int d = A.dim(), D = N * N * d;
  std::vector<std::string> labels;
  labels.reserve(D);
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q)
      for (int i = 0; i < d; ++i)
        labels.push_back("E" + std::to_string(p + 1) + std::to_string(q + 1) + "⊗" + A.label(i));
  std::vector<Element> prods(static_cast<std::size_t>(D) * D);
  for (int p = 0; p < N; ++p)
    for (int q = 0; q < N; ++q)
      for (int s = 0; s < N; ++s)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            int x = (p * N + q) * d + i, y = (q * N + s) * d + j;
            Element e;
            for (const auto& [k, c] : A.basis_product(i, j)) e.emplace_back((p * N + s) * d + k, c);
            prods[static_cast<std::size_t>(x) * D + y] = std::move(e);
          }
  std::optional<Element> unit;
  if (A.is_unital()) {
    Element u;
    for (int p = 0; p < N; ++p)
      for (const auto& [k, c] : A.unit()) u.emplace_back((p * N + p) * d + k, c);
    unit = canonicalize(std::move(u));
  }
  return FDAlgebra(A.field_order(), std::move(labels), std::move(prods), std::move(unit),
                   "M" + std::to_string(N) + "(" + A.name() + ")");
}

inline FDAlgebra direct_sum(const FDAlgebra& A, const FDAlgebra& B) {
  const int da = A.dim(), db = B.dim(), d = da + db;
  int order = std::lcm(A.field_order(), B.field_order());
  std::vector<std::string> labels;
  for (const auto& l : A.labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : B.labels()) labels.push_back("(0," + l + ")");
  std::vector<Element> prods(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) prods[i * d + j] = A.basis_product(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      Element e;
      for (const auto& [k, c] : B.basis_product(i, j)) e.emplace_back(k + da, c);
      prods[(i + da) * d + j + da] = std::move(e);
    }
  std::optional<Element> unit;
  if (A.is_unital() && B.is_unital()) {
    Element u = A.unit();
    for (const auto& [k, c] : B.unit()) u.emplace_back(k + da, c);
    unit = std::move(u);
  }
  return FDAlgebra(order, std::move(labels), std::move(prods), std::move(unit), A.name() + "⊕" + B.name());
}

/// Adjoins a unit: basis {1, a_0, ..., a_(d-1)}.
inline FDAlgebra unitalization(const FDAlgebra& A) {
  const int d = A.dim() + 1;
  std::vector<std::string> labels{"1"};
  for (const auto& l : A.labels()) labels.push_back(l);
  std::vector<Element> prods(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i) {
    prods[i] = basis_element(i);
    prods[static_cast<std::size_t>(i) * d] = basis_element(i);
  }
  for (int i = 1; i < d; ++i)
    for (int j = 1; j < d; ++j) {
      Element e;
      for (const auto& [k, c] : A.basis_product(i - 1, j - 1)) e.emplace_back(k + 1, c);
      prods[i * d + j] = std::move(e);
    }
  return FDAlgebra(A.field_order(), std::move(labels), std::move(prods), basis_element(0), A.name() + "⁺");
}

/// Upper-triangular N x N matrices, basis E_pq (p <= q) in row-major order.
inline FDAlgebra upper_triangular(int N) {
  std::vector<std::pair<int, int>> idx;
  for (int p = 0; p < N; ++p)
    for (int q = p; q < N; ++q) idx.emplace_back(p, q);
  const int d = static_cast<int>(idx.size());
  std::vector<std::string> labels;
  for (auto [p, q] : idx) labels.push_back("E" + std::to_string(p + 1) + std::to_string(q + 1));
  auto find = [&](int p, int q) {
    return static_cast<int>(std::find(idx.begin(), idx.end(), std::make_pair(p, q)) - idx.begin());
  };
  std::vector<Element> prods(static_cast<std::size_t>(d) * d);
  Element unit;
  for (int x = 0; x < d; ++x) {
    if (idx[x].first == idx[x].second) unit.emplace_back(x, Scalar(1));
    for (int y = 0; y < d; ++y)
      if (idx[x].second == idx[y].first) prods[x * d + y] = basis_element(find(idx[x].first, idx[y].second));
  }
  return FDAlgebra(1, std::move(labels), std::move(prods), unit, "T" + std::to_string(N));
}

inline FDAlgebra group_algebra(const FiniteGroup& G, int order = 1) {
  const int n = G.order();
  std::vector<Element> prods(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) prods[a * n + b] = basis_element(G.mul(a, b));
  return FDAlgebra(order, G.labels(), std::move(prods), basis_element(G.identity()), "Q[" + G.name() + "]");
}

/// Multiplicative closure of the span of `gens` (no unit is added).
inline Subspace<Scalar> multiplicative_closure(const FDAlgebra& A, const std::vector<Element>& gens, int cap = 64) {
  Subspace<Scalar> S(A.dim());
  std::vector<Element> frontier;
  for (const auto& g : gens)
    if (S.insert(g)) frontier.push_back(g);
  while (!frontier.empty()) {
    std::vector<Element> next;
    auto basis = S.basis();
    for (const auto& f : frontier)
      for (const auto& b : basis) {
        for (const Element& p : {A.mul(f, b), A.mul(b, f)})
          if (S.insert(p)) next.push_back(p);
        if (S.dim() > cap) throw ClosureOverflow("closure exceeds dimension cap " + std::to_string(cap));
      }
    frontier = std::move(next);
  }
  return S;
}

/// The algebra structure on a multiplicatively closed subspace, in its
/// canonical echelon basis.
inline FDAlgebra algebra_on_subspace(const FDAlgebra& A, const Subspace<Scalar>& S, std::string name = {}) {
  auto basis = S.basis();
  const int d = static_cast<int>(basis.size());
  if (d == 0) throw ValidationError("subalgebra is zero");
  std::vector<std::string> labels;
  for (int i = 0; i < d; ++i) labels.push_back("s" + std::to_string(i));
  std::vector<Element> prods(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Element p = A.mul(basis[i], basis[j]);
      if (!S.contains(p)) throw ValidationError("subspace is not closed under multiplication");
      prods[i * d + j] = dense_to_element(S.coordinates(p));
    }
  FDAlgebra B(A.field_order(), std::move(labels), std::move(prods), std::nullopt, std::move(name));
  auto u = find_unit(B);
  return FDAlgebra(B.field_order(), B.labels(), B.products(), u, B.name());
}

inline FDAlgebra subalgebra_closure(const FDAlgebra& A, const std::vector<Element>& gens, int cap = 64) {
  return algebra_on_subspace(A, multiplicative_closure(A, gens, cap), A.name() + "-sub");
}

// ---------------------------------------------------------------------------
// Ideals.

struct TwoSidedIdeal {
  AlgebraPtr parent;
  Subspace<Scalar> space;
};

inline bool absorbs(const FDAlgebra& A, const Subspace<Scalar>& S) {
  for (const auto& x : S.basis())
    for (int a = 0; a < A.dim(); ++a)
      if (!S.contains(A.mul(basis_element(a), x)) || !S.contains(A.mul(x, basis_element(a)))) return false;
  return true;
}

inline TwoSidedIdeal make_ideal(AlgebraPtr A, Subspace<Scalar> S) {
  if (S.ambient() != A->dim()) throw AmbientMismatch("ideal ambient differs from algebra dimension");
  if (!absorbs(*A, S)) throw ValidationError("subspace is not a two-sided ideal");
  return {std::move(A), std::move(S)};
}

/// Smallest two-sided ideal containing gens (gens themselves included, so
/// this works without a unit too).
inline TwoSidedIdeal ideal_generated_by(AlgebraPtr A, const std::vector<Element>& gens) {
  Subspace<Scalar> S(A->dim());
  std::vector<Element> frontier;
  for (const auto& g : gens)
    if (S.insert(g)) frontier.push_back(g);
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (const auto& f : frontier)
      for (int a = 0; a < A->dim(); ++a)
        for (const Element& p : {A->mul(basis_element(a), f), A->mul(f, basis_element(a))})
          if (S.insert(p)) next.push_back(p);
    frontier = std::move(next);
  }
  return {std::move(A), std::move(S)};
}

/// Product ideal I*J = span{x y}.
inline Subspace<Scalar> product_space(const FDAlgebra& A, const Subspace<Scalar>& I, const Subspace<Scalar>& J) {
  Subspace<Scalar> S(A.dim());
  auto bi = I.basis(), bj = J.basis();
  for (const auto& x : bi)
    for (const auto& y : bj) S.insert(A.mul(x, y));
  return S;
}

inline bool is_nilpotent_subspace(const FDAlgebra& A, const Subspace<Scalar>& S) {
  Subspace<Scalar> P = S;
  for (int k = 0; k <= A.dim() + 1; ++k) {
    if (P.dim() == 0) return true;
    Subspace<Scalar> Q = product_space(A, P, S);
    if (Q == P) return false;
    P = std::move(Q);
  }
  return P.dim() == 0;
}

/// A/S for an ideal S.  The basis is the set of standard basis vectors that
/// are not pivots of S, labelled as in A.
struct Quotient {
  FDAlgebra algebra;
  std::vector<int> kept;            // basis indices of A surviving in A/S
  SparseMatrix<Scalar> projection;  // dim(A/S) x dim(A)
};

inline Quotient quotient_by(const FDAlgebra& A, const Subspace<Scalar>& S) {
  if (!absorbs(A, S)) throw ValidationError("quotient by a subspace that is not an ideal");
  auto piv = S.pivots();
  std::vector<int> kept, pos(A.dim(), -1);
  for (int i = 0; i < A.dim(); ++i)
    if (!std::binary_search(piv.begin(), piv.end(), i)) {
      pos[i] = static_cast<int>(kept.size());
      kept.push_back(i);
    }
  const int d = static_cast<int>(kept.size());
  auto project = [&](const Element& x) {
    Element r = S.reduce(x), out;
    for (const auto& [k, v] : r) out.emplace_back(pos[k], v);  // reduced vectors vanish on pivots
    return out;
  };
  SparseMatrix<Scalar> P(std::max(d, 0), A.dim());
  for (int i = 0; i < A.dim(); ++i) P.set_col(i, project(basis_element(i)));
  if (d == 0) throw ValidationError("quotient by the whole algebra is zero");
  std::vector<std::string> labels;
  for (int k : kept) labels.push_back(A.label(k));
  std::vector<Element> prods(static_cast<std::size_t>(d) * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prods[i * d + j] = project(A.basis_product(kept[i], kept[j]));
  std::optional<Element> unit;
  if (A.is_unital()) unit = project(A.unit());
  FDAlgebra Q(A.field_order(), std::move(labels), std::move(prods), std::move(unit), A.name() + "/J");
  return {std::move(Q), std::move(kept), std::move(P)};
}

inline FDAlgebra quotient(const FDAlgebra& A, const TwoSidedIdeal& J) { return quotient_by(A, J.space).algebra; }

// ---------------------------------------------------------------------------
// Linear maps between algebras.

struct LinearMap {
  AlgebraPtr source, target;
  SparseMatrix<Scalar> matrix;  // target dim x source dim
  bool multiplicative = false;
  bool unital = false;

  Element operator()(const Element& x) const { return matrix.apply(x); }
};

inline bool is_multiplicative(const FDAlgebra& S, const FDAlgebra& T, const SparseMatrix<Scalar>& M) {
  for (int i = 0; i < S.dim(); ++i)
    for (int j = 0; j < S.dim(); ++j)
      if (M.apply(S.basis_product(i, j)) != T.mul(M.col(i), M.col(j))) return false;
  return true;
}

inline LinearMap make_linear_map(AlgebraPtr source, AlgebraPtr target, SparseMatrix<Scalar> M) {
  if (M.rows() != target->dim() || M.cols() != source->dim()) throw InvalidArgument("linear map has wrong shape");
  LinearMap f{std::move(source), std::move(target), std::move(M)};
  f.multiplicative = is_multiplicative(*f.source, *f.target, f.matrix);
  f.unital = f.source->is_unital() && f.target->is_unital() && f.matrix.apply(f.source->unit()) == f.target->unit();
  return f;
}

inline LinearMap compose(const LinearMap& g, const LinearMap& f) {
  return make_linear_map(f.source, g.target, g.matrix * f.matrix);
}

inline bool is_automorphism(const FDAlgebra& A, const SparseMatrix<Scalar>& M) {
  if (M.rows() != A.dim() || M.cols() != A.dim()) return false;
  if (static_cast<int>(rank_of(M)) != A.dim()) return false;
  if (!is_multiplicative(A, A, M)) return false;
  return !A.is_unital() || M.apply(A.unit()) == A.unit();
}

// ---------------------------------------------------------------------------
// Bimodules.

struct Bimodule {
  AlgebraPtr algebra;
  int dim = 0;
  std::vector<SparseVec<Scalar>> left;   // left[a*dim + x] = e_a . m_x
  std::vector<SparseVec<Scalar>> right;  // right[x*dA + a] = m_x . e_a
  std::string name;

  const SparseVec<Scalar>& act_left(int a, int x) const { return left[static_cast<std::size_t>(a) * dim + x]; }
  const SparseVec<Scalar>& act_right(int x, int a) const {
    return right[static_cast<std::size_t>(x) * algebra->dim() + a];
  }
  SparseVec<Scalar> left_elem(const Element& a, const SparseVec<Scalar>& m) const {
    std::vector<std::pair<int, Scalar>> acc;
    for (const auto& [i, s] : a)
      for (const auto& [x, t] : m)
        for (const auto& [k, c] : act_left(i, x)) acc.emplace_back(k, s * t * c);
    return canonicalize(std::move(acc));
  }
  SparseVec<Scalar> right_elem(const SparseVec<Scalar>& m, const Element& a) const {
    std::vector<std::pair<int, Scalar>> acc;
    for (const auto& [x, t] : m)
      for (const auto& [i, s] : a)
        for (const auto& [k, c] : act_right(x, i)) acc.emplace_back(k, s * t * c);
    return canonicalize(std::move(acc));
  }
};

/// Checks module associativity on both sides, compatibility, and unitality.
inline bool validate_bimodule(const Bimodule& M, std::string* why = nullptr) {
  const FDAlgebra& A = *M.algebra;
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  for (int x = 0; x < M.dim; ++x) {
    SparseVec<Scalar> mx = basis_element(x);
    for (int a = 0; a < A.dim(); ++a)
      for (int b = 0; b < A.dim(); ++b) {
        Element ea = basis_element(a), eb = basis_element(b);
        if (M.left_elem(ea, M.left_elem(eb, mx)) != M.left_elem(A.basis_product(a, b), mx))
          return fail("left action is not associative");
        if (M.right_elem(M.right_elem(mx, ea), eb) != M.right_elem(mx, A.basis_product(a, b)))
          return fail("right action is not associative");
        if (M.right_elem(M.left_elem(ea, mx), eb) != M.left_elem(ea, M.right_elem(mx, eb)))
          return fail("left and right actions do not commute");
      }
    if (A.is_unital() && (M.left_elem(A.unit(), mx) != mx || M.right_elem(mx, A.unit()) != mx))
      return fail("actions are not unital");
  }
  return true;
}

/// A_gamma: left action by multiplication, right action x . c = x gamma(c).
inline Bimodule twisted_bimodule(AlgebraPtr A, const SparseMatrix<Scalar>& gamma) {
  if (!is_automorphism(*A, gamma)) throw NotAutomorphism("twisting map is not a unital algebra automorphism");
  const int d = A->dim();
  Bimodule M{A, d, {}, {}, "twisted"};
  M.left.resize(static_cast<std::size_t>(d) * d);
  M.right.resize(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int x = 0; x < d; ++x) {
      M.left[a * d + x] = A->basis_product(a, x);
      M.right[x * d + a] = A->mul(basis_element(x), gamma.col(a));
    }
  return M;
}

inline Bimodule diagonal_bimodule(AlgebraPtr A) {
  const int d = A->dim();
  Bimodule M{A, d, {}, {}, "diagonal"};
  M.left.resize(static_cast<std::size_t>(d) * d);
  M.right.resize(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a)
    for (int x = 0; x < d; ++x) {
      M.left[a * d + x] = A->basis_product(a, x);
      M.right[x * d + a] = A->basis_product(x, a);
    }
  return M;
}

// ---------------------------------------------------------------------------
// Group actions by automorphisms.

struct GroupAction {
  FiniteGroup group;
  AlgebraPtr algebra;
  std::vector<SparseMatrix<Scalar>> matrices;  // one per group element

  const SparseMatrix<Scalar>& of(int g) const { return matrices[g]; }
};

inline GroupAction make_group_action(FiniteGroup G, AlgebraPtr A, std::vector<SparseMatrix<Scalar>> mats) {
  if (static_cast<int>(mats.size()) != G.order()) throw ValidationError("need one matrix per group element");
  for (int g = 0; g < G.order(); ++g)
    if (!is_automorphism(*A, mats[g]))
      throw NotAutomorphism("action of " + G.label(g) + " is not a unital algebra automorphism");
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      if (!(mats[g] * mats[h] == mats[G.mul(g, h)]))
        throw ValidationError("action matrices do not compose by the group law at (" + G.label(g) + "," +
                              G.label(h) + ")");
  return {std::move(G), std::move(A), std::move(mats)};
}

/// Action on Q^n induced by permutations of the points: g sends the
/// indicator of point x to the indicator of g(x).
inline GroupAction permutation_action(FiniteGroup G, AlgebraPtr A, const std::vector<std::vector<int>>& perms) {
  std::vector<SparseMatrix<Scalar>> mats;
  for (const auto& p : perms) {
    SparseMatrix<Scalar> m(A->dim(), A->dim());
    for (int x = 0; x < A->dim(); ++x) m.set_col(x, basis_element(p[x]));
    mats.push_back(std::move(m));
  }
  return make_group_action(std::move(G), std::move(A), std::move(mats));
}

}  // namespace cychom
