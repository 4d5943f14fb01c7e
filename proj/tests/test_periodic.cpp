#include <gtest/gtest.h>

#include "cychom/periodic.hpp"

using namespace cychom;

namespace {

std::pair<int, int> dims(const HPReport& r) { return {r.even_dim, r.odd_dim}; }

LinearMap map_of(const FDAlgebra& L, const FDAlgebra& J, std::vector<std::tuple<int, int, Scalar>> trips) {
  return make_linear_map(share(L), share(J), SparseMatrix<Scalar>::from_triplets(J.dim(), L.dim(), std::move(trips)));
}

}  // namespace

TEST(HP, Examples) {
  auto t = hp(share(truncated_polynomial(3)));
  EXPECT_EQ(dims(t), std::make_pair(1, 0));
  EXPECT_EQ(t.method, "both");
  EXPECT_TRUE(t.agree);
  EXPECT_EQ(dims(hp(share(group_algebra(symmetric_group_3())), HPMode::RadicalShortcut)), std::make_pair(3, 0));
  EXPECT_EQ(dims(hp(share(functions_on_points(5)))), std::make_pair(5, 0));
}

TEST(HP, NilpotentExtensionsByBothMethods) {
  for (int N = 1; N <= 4; ++N) {
    auto r = hp(share(truncated_polynomial(N)), HPMode::Both);
    EXPECT_EQ(dims(r), std::make_pair(1, 0)) << N;
    ASSERT_TRUE(r.stabilization.has_value());
    EXPECT_TRUE(r.agree) << N;
    EXPECT_FALSE(r.inconclusive);
    auto s = hp(share(truncated_polynomial(N)), HPMode::Stabilization);
    EXPECT_EQ(s.method, "stabilization");
    EXPECT_EQ(dims(s), std::make_pair(1, 0));
  }
}

TEST(HP, StabilizationAgreesWhereItRuns) {
  for (const auto& A : {upper_triangular(2), matrix_algebra(ground_field(), 2), functions_on_points(3),
                        group_algebra(cyclic_group(2)), direct_sum(truncated_polynomial(2), ground_field())}) {
    auto r = hp(share(A));
    ASSERT_TRUE(r.stabilization.has_value()) << A.name() << " " << r.note;
    EXPECT_TRUE(r.agree) << A.name();
  }
}

TEST(HP, RejectsShortCutoffAndNonUnital) {
  EXPECT_THROW(hp(share(ground_field()), HPMode::Stabilization, 3), InvalidArgument);
  FDAlgebra nil(1, {"x"}, {Element{}}, std::nullopt, "nil");
  EXPECT_THROW(hp(share(nil)), NonUnital);
}

TEST(HPNonUnital, Examples) {
  auto A = truncated_polynomial(3);
  auto J = algebra_on_subspace(A, Subspace<Scalar>::span(3, {basis_element(1), basis_element(2)}), "(x)");
  EXPECT_EQ(dims(hp_nonunital(J)), std::make_pair(0, 0));
  EXPECT_EQ(dims(hp_nonunital(ground_field())), std::make_pair(1, 0));
  auto m2 = hp_nonunital(matrix_algebra(ground_field(), 2));
  EXPECT_EQ(dims(m2), dims(hp(share(matrix_algebra(ground_field(), 2)))));
}

TEST(Excision, CorpusPairs) {
  auto q2 = share(functions_on_points(2));
  auto r1 = excision_check(make_ideal(q2, Subspace<Scalar>::span(2, {basis_element(0)})));
  EXPECT_TRUE(r1.exact);
  EXPECT_EQ(r1.ideal.even_dim + r1.quotient.even_dim, 2);

  auto dual = share(truncated_polynomial(2));
  auto r2 = excision_check(make_ideal(dual, Subspace<Scalar>::span(2, {basis_element(1)})));
  EXPECT_TRUE(r2.exact);
  EXPECT_EQ(dims(r2.ideal), std::make_pair(0, 0));
  EXPECT_EQ(dims(r2.algebra), std::make_pair(1, 0));

  auto t2 = share(upper_triangular(2));
  auto r3 = excision_check(make_ideal(t2, Subspace<Scalar>::span(3, {basis_element(1)})));
  EXPECT_TRUE(r3.exact);
  EXPECT_EQ(dims(r3.algebra), dims(hp(share(functions_on_points(2)))));
  EXPECT_EQ(r3.nodes.size(), 6u);
}

TEST(Excision, InclusionIsInjective) {
  // J = diagonal block of Q (+) M2 inside itself.
  auto A = share(direct_sum(ground_field(), matrix_algebra(ground_field(), 2)));
  auto J = ideal_generated_by(A, {basis_element(1)});
  auto r = excision_check(J);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.rank_inclusion, 1u);
  EXPECT_EQ(r.rank_projection, 1u);
}

TEST(DirectSum, Examples) {
  auto q = share(ground_field());
  auto r1 = direct_sum_check(q, q, 3);
  EXPECT_TRUE(r1.ok);
  EXPECT_EQ(r1.hh_sum, (std::vector<int>{2, 0, 0, 0}));
  auto r2 = direct_sum_check(share(truncated_polynomial(2)), share(matrix_algebra(ground_field(), 2)), 3);
  EXPECT_TRUE(r2.ok);
  EXPECT_EQ(r2.hh_sum, (std::vector<int>{3, 1, 1, 1}));
  auto r3 = direct_sum_check(share(group_algebra(cyclic_group(2))), q, 2);
  EXPECT_EQ(dims(r3.hp_sum), std::make_pair(3, 0));
  EXPECT_TRUE(r3.ok);
}

TEST(InducedHC, HochschildIsoGivesCyclicIso) {
  // Unital inclusion Q -> M2 (identity matrix) and Q -> Q[x]/(x^2).
  auto inc = map_of(ground_field(), matrix_algebra(ground_field(), 2), {{0, 0, Scalar(1)}, {3, 0, Scalar(1)}});
  auto hh_r = induced_map_hh(inc, 3).ranks;
  auto hc_r = induced_ranks_hc(inc, 3);
  EXPECT_EQ(hh_r, (std::vector<std::size_t>{1, 0, 0, 0}));
  EXPECT_EQ(hc_r, (std::vector<std::size_t>{1, 0, 1, 0}));
  auto aug = map_of(truncated_polynomial(2), ground_field(), {{0, 0, Scalar(1)}});
  EXPECT_EQ(induced_ranks_hc(aug, 3), (std::vector<std::size_t>{1, 0, 1, 0}));
}

TEST(SpectrumPreserving, CorpusMorphisms) {
  auto inc = spectrum_preserving_check(
      map_of(ground_field(), matrix_algebra(ground_field(), 2), {{0, 0, Scalar(1)}, {3, 0, Scalar(1)}}));
  EXPECT_TRUE(inc.spectrum_preserving);
  EXPECT_TRUE(inc.hp_agree);
  EXPECT_EQ(dims(*inc.hp_source), std::make_pair(1, 0));
  auto diag = spectrum_preserving_check(map_of(ground_field(), functions_on_points(2), {{0, 0, Scalar(1)}, {1, 0, Scalar(1)}}));
  EXPECT_FALSE(diag.spectrum_preserving);
  auto swap = spectrum_preserving_check(
      map_of(functions_on_points(2), functions_on_points(2), {{0, 1, Scalar(1)}, {1, 0, Scalar(1)}}));
  EXPECT_TRUE(swap.spectrum_preserving);
  EXPECT_EQ(swap.relation.map, (std::vector<int>{1, 0}));
  EXPECT_TRUE(swap.hp_agree);
}

TEST(WeaklySpectrumPreserving, Examples) {
  auto T2 = upper_triangular(2);
  auto Q2 = functions_on_points(2);
  // Identity with a common filtration 0 < rad < T2.
  auto id = map_of(T2, T2, {{0, 0, Scalar(1)}, {1, 1, Scalar(1)}, {2, 2, Scalar(1)}});
  std::vector<Subspace<Scalar>> f{Subspace<Scalar>(3), Subspace<Scalar>::span(3, {basis_element(1)}),
                                  Subspace<Scalar>::full(3)};
  auto r0 = weakly_spectrum_preserving_check(id, f, f);
  EXPECT_TRUE(r0.weakly_spectrum_preserving);
  // Diagonal Q^2 into T2 with 0 = 0 < Q^2 and 0 < rad < T2.
  auto inc = map_of(Q2, T2, {{0, 0, Scalar(1)}, {2, 1, Scalar(1)}});
  std::vector<Subspace<Scalar>> fl{Subspace<Scalar>(2), Subspace<Scalar>(2), Subspace<Scalar>::full(2)};
  auto r1 = weakly_spectrum_preserving_check(inc, fl, f);
  EXPECT_TRUE(r1.weakly_spectrum_preserving);
  EXPECT_TRUE(r1.hp_agree);
  EXPECT_EQ(dims(*r1.hp_target), std::make_pair(2, 0));
  // Collapsing two blocks into one.
  auto sum = map_of(Q2, ground_field(), {{0, 0, Scalar(1)}, {0, 1, Scalar(1)}});
  std::vector<Subspace<Scalar>> g2{Subspace<Scalar>(2), Subspace<Scalar>::full(2)};
  std::vector<Subspace<Scalar>> g1{Subspace<Scalar>(1), Subspace<Scalar>::full(1)};
  auto r2 = weakly_spectrum_preserving_check(sum, g2, g1);
  EXPECT_FALSE(r2.weakly_spectrum_preserving);
  ASSERT_TRUE(r2.failing_layer.has_value());
  EXPECT_EQ(*r2.failing_layer, 1);
  // phi(L_1) outside J_1.
  std::vector<Subspace<Scalar>> bad{Subspace<Scalar>(2), Subspace<Scalar>::span(2, {basis_element(0)}),
                                    Subspace<Scalar>::full(2)};
  EXPECT_THROW(weakly_spectrum_preserving_check(inc, bad, f), FiltrationNotRespected);
}

TEST(E1, TotalsMatchHP) {
  for (const auto& A : {group_algebra(symmetric_group_3()), functions_on_points(3), truncated_polynomial(2),
                        upper_triangular(2)}) {
    auto c = compare_e1_with_hp(share(A));
    EXPECT_TRUE(c.agree) << A.name();
  }
}
