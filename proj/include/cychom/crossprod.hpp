#pragma once

// Crossed products A x| G by finite groups, the conjugacy-class decomposition
// of their Hochschild homology, and for actions on finite point sets the maps
// psi_{g,pi} into matrix algebras over functions on fixed sets together with
// the degree-zero comparison maps phi_g.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "cychom/hochschild.hpp"

namespace cychom {

inline constexpr int kCrossedProductMaxDim = 4096;

struct CrossedProduct {
  AlgebraPtr base;
  GroupAction action;
  GroupMetadata meta;
  AlgebraPtr product;  // basis a (x) g at index g * dim A + a
  int index(int a, int g) const { return g * base->dim() + a; }
};

/// (a (x) g)(b (x) h) = a g(b) (x) gh.
inline CrossedProduct crossed_product(const GroupAction& act, std::string name = {}) {
  const FDAlgebra& A = *act.algebra;
  const FiniteGroup& G = act.group;
  const int dA = A.dim(), n = G.order(), d = dA * n;
  if (d > kCrossedProductMaxDim) throw SizeOverflow("crossed product dimension " + std::to_string(d));
  if (!A.is_unital()) throw NonUnital("crossed products need a unital base algebra");
  std::vector<std::string> labels;
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < dA; ++a) labels.push_back(A.label(a) + "⊗" + G.label(g));
  std::vector<Element> prods(static_cast<std::size_t>(d) * d);
  for (int g = 0; g < n; ++g)
    for (int a = 0; a < dA; ++a)
      for (int h = 0; h < n; ++h)
        for (int b = 0; b < dA; ++b) {
          Element gb = act.of(g).col(b);
          Element p = A.mul(basis_element(a), gb);
          Element out;
          const int gh = G.mul(g, h);
          for (const auto& [k, c] : p) out.emplace_back(gh * dA + k, c);
          prods[static_cast<std::size_t>(g * dA + a) * d + (h * dA + b)] = std::move(out);
        }
  Element unit;
  for (const auto& [k, c] : A.unit()) unit.emplace_back(G.identity() * dA + k, c);
  if (name.empty()) name = A.name() + "⋊" + G.name();
  CrossedProduct cp{act.algebra, act, group_metadata(G), nullptr};
  cp.product = share(FDAlgebra(A.field_order(), std::move(labels), std::move(prods), unit, std::move(name)));
  return cp;
}

/// Image of the averaging projector (1/|G|) sum_g M_g.
inline Subspace<Scalar> invariants(const std::vector<SparseMatrix<Scalar>>& mats) {
  if (mats.empty()) throw InvalidArgument("invariants of an empty family");
  SparseMatrix<Scalar> avg(mats[0].rows(), mats[0].cols());
  for (const auto& m : mats) avg = avg + m;
  return column_space(avg.scaled(Scalar(Rational(1, static_cast<std::int64_t>(mats.size())))));
}

// ---------------------------------------------------------------------------
// Decomposition of HH over conjugacy classes.

struct ClassContribution {
  int representative = 0;
  std::string label;
  int class_size = 0, centralizer_order = 0;
  std::vector<int> twisted_dims;    // HH_q(A, A_g)
  std::vector<int> invariant_dims;  // HH_q(A, A_g)^{centralizer}
};

struct HHDecomposition {
  std::vector<ClassContribution> classes;
  std::vector<int> direct;  // HH_q(A x| G)
  std::vector<int> sum;     // sum over classes of the invariant dims
  bool ok = false;
};

inline HHDecomposition hh_decomposition(const CrossedProduct& cp, int n_max,
                                        std::size_t budget = default_budget_dims()) {
  const FDAlgebra& A = *cp.base;
  const FiniteGroup& G = cp.action.group;
  HHDecomposition r;
  HochschildOptions opt;
  opt.representatives = false;
  opt.budget = budget;
  r.direct = hh(cp.product, n_max, opt).dims();
  r.sum.assign(n_max + 1, 0);
  for (const auto& cls : cp.meta.classes) {
    const int gamma = cls.representative;
    Bimodule M = twisted_bimodule(cp.base, cp.action.of(gamma));
    BarComplex bar(make_bar_setup(cp.base, ComplexKind::Unnormalized, &M), n_max + 1, BarVariant::B, budget);
    // Averaging over the centralizer, acting diagonally on M (x) A^n.
    const Scalar w = Scalar(Rational(1, static_cast<std::int64_t>(cls.centralizer.size())));
    ChainMap P = tensor_chain_map(bar, bar, n_max, [&](int, const std::vector<int>& t) {
      SparseVec<Scalar> acc;
      for (int g : cls.centralizer) {
        std::vector<Element> xs;
        for (int k : t) xs.push_back(cp.action.of(g).col(k));
        acc = axpy(acc, w, bar.tensor_chain(xs));
      }
      return acc;
    });
    ClassContribution c;
    c.representative = gamma;
    c.label = G.label(gamma);
    c.class_size = cls.size();
    c.centralizer_order = static_cast<int>(cls.centralizer.size());
    for (int n = 0; n <= n_max; ++n) c.twisted_dims.push_back(bar.complex().homology_dim(n));
    for (std::size_t x : induced_ranks(bar.complex(), bar.complex(), P, n_max))
      c.invariant_dims.push_back(static_cast<int>(x));
    for (int n = 0; n <= n_max; ++n) r.sum[n] += c.invariant_dims[n];
    r.classes.push_back(std::move(c));
  }
  (void)A;
  r.ok = r.sum == r.direct;
  return r;
}

// ---------------------------------------------------------------------------
// Actions on finite point sets.

struct FiniteVarietyAction {
  FiniteGroup group;
  int points = 0;
  std::vector<std::vector<int>> perms;  // perms[g][x] = g x
  GroupMetadata meta;

  std::vector<int> fixed(int g) const {
    std::vector<int> f;
    for (int x = 0; x < points; ++x)
      if (perms[g][x] == x) f.push_back(x);
    return f;
  }
  int field_order() const { return detail::canonical_order(meta.exponent); }
};

inline FiniteVarietyAction make_variety_action(FiniteGroup G, std::vector<std::vector<int>> perms) {
  if (static_cast<int>(perms.size()) != G.order()) throw ValidationError("need one permutation per group element");
  const int n = perms.empty() ? 0 : static_cast<int>(perms[0].size());
  for (const auto& p : perms) {
    if (static_cast<int>(p.size()) != n) throw ValidationError("permutations of different lengths");
    std::vector<int> seen(n, 0);
    for (int x : p) {
      if (x < 0 || x >= n || seen[x]++) throw ValidationError("not a permutation");
    }
  }
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      for (int x = 0; x < n; ++x)
        if (perms[G.mul(g, h)][x] != perms[g][perms[h][x]])
          throw ValidationError("permutations do not compose by the group law");
  for (int x = 0; x < n; ++x)
    if (perms[G.identity()][x] != x) throw ValidationError("identity does not act trivially");
  GroupMetadata md = group_metadata(G);
  return {std::move(G), n, std::move(perms), std::move(md)};
}

/// Functions on the points over Q(z_e), e the exponent, crossed with the group.
inline CrossedProduct variety_crossed_product(const FiniteVarietyAction& X) {
  auto A = share(functions_on_points(X.points, X.field_order()));
  return crossed_product(permutation_action(X.group, A, X.perms),
                         "O(" + std::to_string(X.points) + " pts)⋊" + X.group.name());
}

struct PsiComponent {
  int class_index = 0;
  int gamma = 0;
  int character = 0;             // pi_j(gamma^i) = z_k^{ij}
  int size = 0;                  // [G : C_gamma]
  std::vector<int> fixed_points;
  std::vector<int> cosets;       // representatives t_i of G / C_gamma
  bool empty_target = false;
  std::optional<LinearMap> map;  // into M_size(O(X^gamma)), absent when the fixed set is empty
};

struct PsiMap {
  CrossedProduct source;
  std::vector<PsiComponent> components;
  std::vector<std::string> empty_classes;  // classes whose fixed set is empty
};

namespace detail {

inline std::vector<int> left_coset_reps(const FiniteGroup& G, const std::vector<int>& H) {
  std::vector<int> covered(G.order(), 0), reps;
  for (int t = 0; t < G.order(); ++t) {
    if (covered[t]) continue;
    reps.push_back(t);
    for (int h : H) covered[G.mul(t, h)] = 1;
  }
  return reps;
}

}  // namespace detail

/// psi_{g,pi}(a)_{ij} = rho(u_{t_i}^-1 a u_{t_j}) where rho(f u_h) = pi(h) f|X^g for
/// h in the cyclic group C_g generated by g and zero otherwise; this is the
/// representation induced from C_g, so each component is multiplicative.
inline PsiMap psi_map(const FiniteVarietyAction& X) {
  PsiMap out{variety_crossed_product(X), {}, {}};
  const FiniteGroup& G = X.group;
  const int order = X.field_order();
  const CrossedProduct& cp = out.source;
  for (std::size_t ci = 0; ci < X.meta.classes.size(); ++ci) {
    const auto& cls = X.meta.classes[ci];
    const int gamma = cls.representative;
    const int k = cls.rep_order();
    std::vector<int> power_of(G.order(), -1);
    for (int i = 0; i < k; ++i) power_of[cls.cyclic[i]] = i;
    const auto fixed = X.fixed(gamma);
    std::vector<int> pos(X.points, -1);
    for (std::size_t i = 0; i < fixed.size(); ++i) pos[fixed[i]] = static_cast<int>(i);
    const auto cosets = detail::left_coset_reps(G, cls.cyclic);
    const int n = static_cast<int>(cosets.size());
    if (fixed.empty()) out.empty_classes.push_back(G.label(gamma));
    for (int j = 0; j < k; ++j) {
      PsiComponent c;
      c.class_index = static_cast<int>(ci);
      c.gamma = gamma;
      c.character = j;
      c.size = n;
      c.fixed_points = fixed;
      c.cosets = cosets;
      c.empty_target = fixed.empty();
      if (!c.empty_target) {
        auto target = share(matrix_algebra(functions_on_points(static_cast<int>(fixed.size()), order), n));
        const int f = static_cast<int>(fixed.size());
        std::vector<std::tuple<int, int, Scalar>> trips;
        for (int g = 0; g < G.order(); ++g)
          for (int x = 0; x < X.points; ++x)
            for (int i = 0; i < n; ++i) {
              const int ti_inv = G.inv(cosets[i]);
              const int y = X.perms[ti_inv][x];  // u_{t}^-1 d_x = d_{t^-1 x} u_{t}^-1
              if (pos[y] < 0) continue;
              for (int jj = 0; jj < n; ++jj) {
                const int h = G.mul(G.mul(ti_inv, g), cosets[jj]);
                if (power_of[h] < 0) continue;
                trips.emplace_back((i * n + jj) * f + pos[y], cp.index(x, g),
                                   cyclic_character(k, j, power_of[h], order));
              }
            }
        c.map = make_linear_map(cp.product, target,
                                SparseMatrix<Scalar>::from_triplets(target->dim(), cp.product->dim(), std::move(trips)));
      }
      out.components.push_back(std::move(c));
    }
  }
  return out;
}

/// Degree-zero comparison phi_g = sum_pi conj(pi(g)) / #C_g * Tr(psi_{g,pi}),
/// as a matrix from A x| G to O(X^g), with its checks.
struct PhiGammaReport {
  int gamma = 0;
  std::string label;
  SparseMatrix<Scalar> matrix;   // |X^g| x dim(A x| G)
  bool kills_commutators = false;
  bool kills_other_classes = false;
  int summand_dim = 0;           // dim of the g-summand of HH_0
  int rank_on_summand = 0;
  int invariant_dim = 0;         // dim O(X^g)^{centralizer}
  bool image_is_invariants = false;
  bool isomorphism = false;
};

inline PhiGammaReport phi_gamma(const PsiMap& psi, const FiniteVarietyAction& X, int class_index, int q) {
  if (q > 0) throw DegreePositive("phi_g is computed in degree 0 only; higher forms vanish on point sets");
  if (q < 0) throw InvalidArgument("negative degree");
  const auto& cls = X.meta.classes.at(class_index);
  const FiniteGroup& G = X.group;
  const FDAlgebra& B = *psi.source.product;
  const int order = X.field_order();
  const int k = cls.rep_order();
  const auto fixed = X.fixed(cls.representative);
  const int f = static_cast<int>(fixed.size());
  PhiGammaReport r;
  r.gamma = cls.representative;
  r.label = G.label(r.gamma);
  r.matrix = SparseMatrix<Scalar>(f, B.dim());
  for (const auto& c : psi.components) {
    if (c.class_index != class_index || !c.map) continue;
    const Scalar coef = cyclic_character(k, c.character, 1, order).conj() * Scalar(Rational(1, k));
    const int n = c.size;
    SparseMatrix<Scalar> trace(f, n * n * f);
    for (int i = 0; i < n; ++i)
      for (int x = 0; x < f; ++x) trace.set_col((i * n + i) * f + x, {{x, Scalar(1)}});
    r.matrix = r.matrix + (trace * c.map->matrix).scaled(coef);
  }
  // Commutators [b_i, b_j] must map to zero.
  r.kills_commutators = true;
  Subspace<Scalar> comm(B.dim());
  for (int i = 0; i < B.dim(); ++i)
    for (int j = 0; j < B.dim(); ++j) {
      Element c = axpy(B.basis_product(i, j), Scalar(-1), B.basis_product(j, i));
      comm.insert(c);
      if (!r.matrix.apply(c).empty()) r.kills_commutators = false;
    }
  // The g-summand is spanned by f (x) h with h conjugate to g.
  r.kills_other_classes = true;
  Subspace<Scalar> summand = comm;
  std::vector<Element> summand_vecs;
  for (int h = 0; h < G.order(); ++h) {
    const bool in_class = std::binary_search(cls.members.begin(), cls.members.end(), h);
    for (int x = 0; x < X.points; ++x) {
      Element b = basis_element(psi.source.index(x, h));
      if (in_class) {
        summand.insert(b);
        summand_vecs.push_back(b);
      } else if (!r.matrix.apply(b).empty()) {
        r.kills_other_classes = false;
      }
    }
  }
  r.summand_dim = summand.dim() - comm.dim();
  Subspace<Scalar> image(f);
  for (const auto& b : summand_vecs) image.insert(r.matrix.apply(b));
  r.rank_on_summand = image.dim();
  if (f > 0) {
    std::vector<SparseMatrix<Scalar>> mats;
    std::vector<int> pos(X.points, -1);
    for (int i = 0; i < f; ++i) pos[fixed[i]] = i;
    for (int g : cls.centralizer) {
      SparseMatrix<Scalar> m(f, f);
      for (int i = 0; i < f; ++i) m.set_col(i, {{pos[X.perms[g][fixed[i]]], Scalar(1)}});
      mats.push_back(std::move(m));
    }
    Subspace<Scalar> inv = invariants(mats);
    r.invariant_dim = inv.dim();
    r.image_is_invariants = inv == image;
  } else {
    r.image_is_invariants = image.dim() == 0;
  }
  r.isomorphism = r.kills_commutators && r.image_is_invariants && r.rank_on_summand == r.summand_dim;
  return r;
}

}  // namespace cychom
