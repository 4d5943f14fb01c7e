#include <gtest/gtest.h>

#include "cychom/crossprod.hpp"
#include "cychom/spectrum.hpp"

using namespace cychom;

namespace {

std::vector<int> identity_perm(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

FiniteVarietyAction trivial_z2_on_point() { return make_variety_action(cyclic_group(2), {{0}, {0}}); }
FiniteVarietyAction swap2() { return make_variety_action(cyclic_group(2), {{0, 1}, {1, 0}}); }
FiniteVarietyAction swap_fix3() { return make_variety_action(cyclic_group(2), {{0, 1, 2}, {1, 0, 2}}); }
FiniteVarietyAction rot3() { return make_variety_action(cyclic_group(3), {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}); }
FiniteVarietyAction s3_on_3() {
  auto G = symmetric_group_3();
  // Elements are permutations listed with identity first; recover them from the table by
  // letting each element act on the left cosets of the stabilizer of point 0.
  // Simpler: the regular labels encode the permutation images, so act through the table
  // on the three transpositions' fixed points is avoided; use the permutation action on
  // the cosets of a subgroup of order 2.
  const int n = G.order();
  int t = -1;
  for (int g = 1; g < n && t < 0; ++g)
    if (G.element_order(g) == 2) t = g;
  std::vector<int> H{G.identity(), t};
  std::vector<int> coset_of(n, -1);
  std::vector<int> reps;
  for (int g = 0; g < n; ++g) {
    if (coset_of[g] >= 0) continue;
    for (int h : H) coset_of[G.mul(g, h)] = static_cast<int>(reps.size());
    reps.push_back(g);
  }
  std::vector<std::vector<int>> perms(n, std::vector<int>(reps.size()));
  for (int g = 0; g < n; ++g)
    for (std::size_t c = 0; c < reps.size(); ++c) perms[g][c] = coset_of[G.mul(g, reps[c])];
  return make_variety_action(G, perms);
}

std::vector<FiniteVarietyAction> corpus_actions() {
  return {make_variety_action(cyclic_group(1), {identity_perm(2)}), trivial_z2_on_point(), swap2(), swap_fix3(),
          rot3(), s3_on_3()};
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(CrossedProduct, Examples) {
  auto triv = variety_crossed_product(trivial_z2_on_point());
  EXPECT_EQ(triv.product->dim(), 2);
  EXPECT_TRUE(validate(*triv.product).ok);
  EXPECT_EQ(wedderburn_blocks(*triv.product).blocks.size(), 2u);

  auto sw = variety_crossed_product(swap2());
  EXPECT_EQ(sw.product->dim(), 4);
  EXPECT_EQ(wedderburn_blocks(*sw.product).sizes(), (std::vector<int>{2}));

  auto sf = variety_crossed_product(swap_fix3());
  EXPECT_EQ(sf.product->dim(), 6);
  EXPECT_EQ(sorted(wedderburn_blocks(*sf.product).sizes()), (std::vector<int>{1, 1, 2}));
}

TEST(CrossedProduct, ValidAndContainsBase) {
  for (const auto& X : corpus_actions()) {
    auto cp = variety_crossed_product(X);
    SCOPED_TRACE(cp.product->name());
    EXPECT_TRUE(validate(*cp.product).ok);
    EXPECT_EQ(cp.product->dim(), X.points * X.group.order());
    // a -> a (x) e is a unital algebra map.
    const int dA = cp.base->dim();
    std::vector<std::tuple<int, int, Scalar>> trips;
    for (int a = 0; a < dA; ++a) trips.emplace_back(cp.index(a, X.group.identity()), a, Scalar(1));
    auto inc = make_linear_map(cp.base, cp.product, SparseMatrix<Scalar>::from_triplets(cp.product->dim(), dA, trips));
    EXPECT_TRUE(inc.multiplicative);
    EXPECT_TRUE(inc.unital);
  }
}

TEST(CrossedProduct, TrivialGroupGivesBase) {
  auto A = share(truncated_polynomial(3));
  auto act = make_group_action(cyclic_group(1), A, {SparseMatrix<Scalar>::identity(3)});
  auto cp = crossed_product(act);
  EXPECT_EQ(cp.product->products(), A->products());
  auto dec = hh_decomposition(cp, 3);
  EXPECT_TRUE(dec.ok);
  HochschildOptions opt;
  opt.representatives = false;
  EXPECT_EQ(dec.direct, hh(A, 3, opt).dims());
}

TEST(Decomposition, Examples) {
  auto t = hh_decomposition(variety_crossed_product(trivial_z2_on_point()), 2);
  ASSERT_EQ(t.classes.size(), 2u);
  EXPECT_EQ(t.classes[0].invariant_dims[0], 1);
  EXPECT_EQ(t.classes[1].invariant_dims[0], 1);
  EXPECT_EQ(t.direct[0], 2);
  auto s = hh_decomposition(variety_crossed_product(swap2()), 2);
  EXPECT_EQ(s.classes[0].invariant_dims[0], 1);
  EXPECT_EQ(s.classes[1].invariant_dims[0], 0);
  EXPECT_EQ(s.direct[0], 1);
  auto f = hh_decomposition(variety_crossed_product(swap_fix3()), 2);
  EXPECT_EQ(f.classes[0].invariant_dims[0], 2);
  EXPECT_EQ(f.classes[1].invariant_dims[0], 1);
  EXPECT_EQ(f.direct[0], 3);
}

TEST(Decomposition, SumsMatchDirectComputation) {
  for (const auto& X : corpus_actions()) {
    auto cp = variety_crossed_product(X);
    auto d = hh_decomposition(cp, 3);
    EXPECT_TRUE(d.ok) << cp.product->name();
  }
}

TEST(Decomposition, NonCommutativeAndNilpotentBases) {
  // x -> -x on Q[x]/(x^3).
  auto A = share(truncated_polynomial(3));
  auto neg = SparseMatrix<Scalar>::from_triplets(3, 3, {{0, 0, Scalar(1)}, {1, 1, Scalar(-1)}, {2, 2, Scalar(1)}});
  auto cp = crossed_product(make_group_action(cyclic_group(2), A, {SparseMatrix<Scalar>::identity(3), neg}));
  EXPECT_TRUE(hh_decomposition(cp, 3).ok);
  // Conjugation by diag(1, -1) on M2.
  auto M = share(matrix_algebra(ground_field(), 2));
  auto conj = SparseMatrix<Scalar>::from_triplets(
      4, 4, {{0, 0, Scalar(1)}, {1, 1, Scalar(-1)}, {2, 2, Scalar(-1)}, {3, 3, Scalar(1)}});
  auto cm = crossed_product(make_group_action(cyclic_group(2), M, {SparseMatrix<Scalar>::identity(4), conj}));
  EXPECT_TRUE(hh_decomposition(cm, 2).ok);
}

TEST(Decomposition, FreeActionCountsOrbits) {
  auto d = hh_decomposition(variety_crossed_product(rot3()), 1);
  EXPECT_EQ(d.direct[0], 1);
  auto s = hh_decomposition(variety_crossed_product(swap2()), 1);
  EXPECT_EQ(s.direct[0], 1);
}

TEST(Invariants, Examples) {
  auto swap = SparseMatrix<Scalar>::from_triplets(2, 2, {{0, 1, Scalar(1)}, {1, 0, Scalar(1)}});
  EXPECT_EQ(invariants({SparseMatrix<Scalar>::identity(2), swap}).dim(), 1);
  EXPECT_EQ(invariants({SparseMatrix<Scalar>::identity(3)}).dim(), 3);
  auto X = s3_on_3();
  std::vector<SparseMatrix<Scalar>> mats;
  for (const auto& p : X.perms) {
    SparseMatrix<Scalar> m(3, 3);
    for (int x = 0; x < 3; ++x) m.set_col(x, basis_element(p[x]));
    mats.push_back(m);
  }
  auto inv = invariants(mats);
  EXPECT_EQ(inv.dim(), 1);
  EXPECT_TRUE(inv.contains(Element{{0, Scalar(1)}, {1, Scalar(1)}, {2, Scalar(1)}}));
}

TEST(Psi, TrivialGroupIsIdentity) {
  auto X = make_variety_action(cyclic_group(1), {identity_perm(3)});
  auto psi = psi_map(X);
  ASSERT_EQ(psi.components.size(), 1u);
  EXPECT_EQ(psi.components[0].map->matrix, SparseMatrix<Scalar>::identity(3));
}

TEST(Psi, PointWithTrivialZ2) {
  auto X = trivial_z2_on_point();
  auto psi = psi_map(X);
  // Class e: one character, size 2; class s: two characters, size 1.
  std::vector<Scalar> values;
  for (const auto& c : psi.components)
    if (c.gamma != X.group.identity()) values.push_back(sparse_at(c.map->matrix.col(psi.source.index(0, 1)), 0));
  ASSERT_EQ(values.size(), 2u);
  EXPECT_EQ(values[0], Scalar(1));
  EXPECT_EQ(values[1], Scalar(-1));
}

TEST(Psi, SwapHasEmptyFixedSet) {
  auto X = swap2();
  auto psi = psi_map(X);
  ASSERT_EQ(psi.empty_classes.size(), 1u);
  const auto& e = psi.components[0];
  ASSERT_TRUE(e.map.has_value());
  EXPECT_EQ(e.size, 2);
  // The (1,1) entry of psi on O(X) (x) e is the identity of O(X).
  for (int x = 0; x < 2; ++x) {
    auto col = e.map->matrix.col(psi.source.index(x, X.group.identity()));
    EXPECT_EQ(sparse_at(col, x), Scalar(1));
    EXPECT_TRUE(sparse_at(col, 1 - x).is_zero());
  }
}

TEST(Psi, ComponentsAreUnitalAlgebraMaps) {
  for (const auto& X : corpus_actions()) {
    auto psi = psi_map(X);
    for (const auto& c : psi.components) {
      if (!c.map) continue;
      EXPECT_TRUE(c.map->multiplicative) << psi.source.product->name() << " class " << c.class_index;
      EXPECT_TRUE(c.map->unital);
    }
  }
}

TEST(Phi, Examples) {
  auto X1 = make_variety_action(cyclic_group(1), {identity_perm(2)});
  auto p1 = phi_gamma(psi_map(X1), X1, 0, 0);
  EXPECT_EQ(p1.matrix, SparseMatrix<Scalar>::identity(2));
  auto X2 = trivial_z2_on_point();
  auto p2 = phi_gamma(psi_map(X2), X2, 1, 0);
  EXPECT_TRUE(p2.isomorphism);
  EXPECT_EQ(p2.summand_dim, 1);
  EXPECT_EQ(sparse_at(p2.matrix.col(1), 0), Scalar(1));
  auto X3 = swap_fix3();
  auto p3 = phi_gamma(psi_map(X3), X3, 1, 0);
  EXPECT_TRUE(p3.isomorphism);
  EXPECT_EQ(p3.rank_on_summand, 1);
  EXPECT_THROW(phi_gamma(psi_map(X3), X3, 1, 1), DegreePositive);
}

TEST(Phi, IsomorphismOnEverySummand) {
  for (const auto& X : corpus_actions()) {
    auto psi = psi_map(X);
    for (std::size_t c = 0; c < X.meta.classes.size(); ++c) {
      auto r = phi_gamma(psi, X, static_cast<int>(c), 0);
      SCOPED_TRACE(psi.source.product->name() + " class " + r.label);
      EXPECT_TRUE(r.kills_commutators);
      EXPECT_TRUE(r.kills_other_classes);
      EXPECT_TRUE(r.isomorphism);
      EXPECT_EQ(r.summand_dim, r.invariant_dim);
    }
  }
}
