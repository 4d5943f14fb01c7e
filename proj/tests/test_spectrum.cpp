#include <gtest/gtest.h>

#include "cychom/spectrum.hpp"

using namespace cychom;

namespace {

int class_count(const FiniteGroup& G) {
  std::vector<int> seen(G.order(), 0);
  int count = 0;
  for (int g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    ++count;
    for (int h = 0; h < G.order(); ++h) seen[G.mul(G.mul(h, g), G.inv(h))] = 1;
  }
  return count;
}

std::vector<int> sorted(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<FDAlgebra> sample_algebras() {
  return {ground_field(),
          functions_on_points(3),
          truncated_polynomial(3),
          upper_triangular(2),
          upper_triangular(3),
          matrix_algebra(ground_field(), 2),
          matrix_algebra(truncated_polynomial(2), 2),
          direct_sum(truncated_polynomial(2), matrix_algebra(ground_field(), 2)),
          group_algebra(cyclic_group(2)),
          group_algebra(cyclic_group(4)),
          group_algebra(symmetric_group_3()),
          group_algebra(dihedral_group_8()),
          group_algebra(quaternion_group())};
}

}  // namespace

TEST(Radical, Examples) {
  EXPECT_EQ(jacobson_radical(matrix_algebra(ground_field(), 2)).dim(), 0);
  auto r = jacobson_radical(truncated_polynomial(3));
  EXPECT_EQ(r, Subspace<Scalar>::span(3, {basis_element(1), basis_element(2)}));
  auto t = jacobson_radical(upper_triangular(2));  // basis E11, E12, E22
  EXPECT_EQ(t, Subspace<Scalar>::span(3, {basis_element(1)}));
}

TEST(Radical, NonUnitalNilpotentIsEverything) {
  FDAlgebra A(1, {"x", "y"}, {Element{{1, Scalar(1)}}, Element{}, Element{}, Element{}}, std::nullopt, "nil");
  EXPECT_EQ(jacobson_radical(A).dim(), 2);
}

TEST(Radical, QuotientIsSemiprimitive) {
  for (const auto& A : sample_algebras()) {
    auto rad = jacobson_radical(A);
    if (rad.dim() == 0 || rad.dim() == A.dim()) continue;
    EXPECT_EQ(jacobson_radical(quotient_by(A, rad).algebra).dim(), 0) << A.name();
  }
}

TEST(Wedderburn, Examples) {
  auto s3 = wedderburn_blocks(group_algebra(symmetric_group_3()));
  EXPECT_EQ(sorted(s3.sizes()), (std::vector<int>{1, 1, 2}));
  auto z4 = wedderburn_blocks(group_algebra(cyclic_group(4)));
  EXPECT_EQ(z4.field_order, 4);
  EXPECT_EQ(z4.sizes(), (std::vector<int>{1, 1, 1, 1}));
  auto dual = wedderburn_blocks(truncated_polynomial(2));
  EXPECT_EQ(dual.blocks.size(), 1u);
  EXPECT_EQ(dual.prim_points.size(), 1u);
  EXPECT_EQ(wedderburn_blocks(matrix_algebra(ground_field(), 2)).sizes(), (std::vector<int>{2}));
  EXPECT_EQ(sorted(wedderburn_blocks(group_algebra(quaternion_group())).sizes()),
            (std::vector<int>{1, 1, 1, 1, 2}));
}

TEST(Wedderburn, FieldHintIsUsed) {
  WedderburnOptions opt;
  opt.field_order = 3;
  auto s3 = wedderburn_blocks(group_algebra(symmetric_group_3()), opt);
  EXPECT_EQ(s3.field_order, 3);
  EXPECT_EQ(s3.blocks.size(), 3u);
}

TEST(Wedderburn, DimensionCountAndPrimPoints) {
  for (const auto& A : sample_algebras()) {
    SCOPED_TRACE(A.name());
    auto S = wedderburn_blocks(A);
    int total = S.radical.dim();
    for (const auto& b : S.blocks) total += b.size * b.size;
    EXPECT_EQ(total, A.dim());
    EXPECT_EQ(static_cast<int>(S.blocks.size()), block_count(A));
    for (std::size_t j = 0; j < S.prim_points.size(); ++j) {
      EXPECT_EQ(A.dim() - S.prim_points[j].dim(), S.blocks[j].dim);
      EXPECT_TRUE(absorbs(*S.algebra, S.prim_points[j]));
      EXPECT_TRUE(S.prim_points[j].contains(S.radical));
      for (std::size_t k = 0; k < j; ++k) EXPECT_FALSE(S.prim_points[j] == S.prim_points[k]);
    }
    // Idempotents are central, orthogonal and sum to one.
    const auto& Q = S.semisimple->algebra;
    Element sum;
    for (std::size_t j = 0; j < S.blocks.size(); ++j) {
      const auto& e = S.blocks[j].idempotent;
      EXPECT_EQ(Q.mul(e, e), e);
      EXPECT_TRUE(S.quotient_center.contains(e));
      for (std::size_t k = 0; k < j; ++k) EXPECT_TRUE(Q.mul(e, S.blocks[k].idempotent).empty());
      sum = axpy(sum, Scalar(1), e);
    }
    EXPECT_EQ(sum, Q.unit());
  }
}

TEST(Wedderburn, GroupBlocksCountClasses) {
  for (const auto& G : {cyclic_group(2), cyclic_group(4), symmetric_group_3(), dihedral_group_8(), quaternion_group()}) {
    WedderburnOptions opt;
    opt.field_order = G.exponent();
    EXPECT_EQ(static_cast<int>(wedderburn_blocks(group_algebra(G), opt).blocks.size()), class_count(G)) << G.name();
  }
}

TEST(CentralCharacter, Examples) {
  auto m2 = wedderburn_blocks(matrix_algebra(ground_field(), 2));
  ASSERT_EQ(m2.central_characters.size(), 1u);
  EXPECT_EQ(m2.central_characters[0].dim(), 0);  // the zero ideal of the center Q
  auto q2 = wedderburn_blocks(functions_on_points(2));
  ASSERT_EQ(q2.central_characters.size(), 2u);
  EXPECT_FALSE(q2.central_characters[0] == q2.central_characters[1]);
  auto s3 = wedderburn_blocks(group_algebra(symmetric_group_3()));
  EXPECT_EQ(s3.center.dim(), 3);
  for (std::size_t j = 0; j < 3; ++j) {
    EXPECT_EQ(s3.central_characters[j].dim(), 2);
    for (std::size_t k = 0; k < j; ++k) EXPECT_FALSE(s3.central_characters[j] == s3.central_characters[k]);
  }
}

TEST(StandardFiltration, Examples) {
  auto s3 = standard_filtration(group_algebra(symmetric_group_3()));
  ASSERT_EQ(s3.ideals.size(), 3u);
  EXPECT_EQ(s3.ideals[1].dim(), 4);
  EXPECT_EQ(s3.ideals[2].dim(), 0);
  auto ql = standard_filtration(functions_on_points(4));
  ASSERT_EQ(ql.ideals.size(), 2u);
  EXPECT_EQ(ql.ideals[1].dim(), 0);
  auto t2 = standard_filtration(upper_triangular(2));
  ASSERT_EQ(t2.ideals.size(), 2u);
  EXPECT_EQ(t2.ideals[1], jacobson_radical(upper_triangular(2)));
}

TEST(StandardFiltration, IsAbelian) {
  for (const auto& A : sample_algebras()) {
    auto c = abelian_check(standard_filtration(A));
    EXPECT_TRUE(c.ok) << A.name();
  }
}

TEST(StandardFiltration, NonSemiprimitiveQuotientFailsConditionOne) {
  auto A = share(truncated_polynomial(2));
  IdealFiltration F{A, {Subspace<Scalar>::full(2), Subspace<Scalar>(2)}};
  auto c = abelian_check(F);
  EXPECT_FALSE(c.ok);
  EXPECT_FALSE(c.semiprimitive[0]);
}

TEST(E1, Examples) {
  auto s3 = spectral_e1(standard_filtration(group_algebra(symmetric_group_3())));
  ASSERT_EQ(s3.terms.size(), 2u);
  EXPECT_EQ(s3.terms[0].points, 2);
  EXPECT_EQ(s3.terms[1].points, 1);
  EXPECT_EQ(s3.even_total, 3);
  EXPECT_EQ(s3.odd_total, 0);
  EXPECT_EQ(spectral_e1(standard_filtration(functions_on_points(4))).even_total, 4);
  EXPECT_EQ(spectral_e1(standard_filtration(truncated_polynomial(2))).even_total, 1);
  EXPECT_EQ(spectral_e1(standard_filtration(upper_triangular(2))).even_total, 2);
}

TEST(E1, RejectsOtherFiltrations) {
  auto A = share(functions_on_points(2));
  IdealFiltration F{A, {Subspace<Scalar>::full(2), Subspace<Scalar>::span(2, {basis_element(0)}), Subspace<Scalar>(2)}};
  EXPECT_THROW(spectral_e1(F), FiltrationNotStandard);
}

TEST(PrimRelation, Examples) {
  // Unital inclusion Q -> M2.
  auto M2 = matrix_algebra(ground_field(), 2);
  auto [sQ, sM] = common_spectra(ground_field(), M2);
  auto R = prim_relation(SparseMatrix<Scalar>::from_triplets(4, 1, {{0, 0, Scalar(1)}, {3, 0, Scalar(1)}}), sQ, sM);
  EXPECT_TRUE(R.bijective);
  // Diagonal Q -> Q^2.
  auto Q2 = functions_on_points(2);
  auto [a, b] = common_spectra(ground_field(), Q2);
  auto D = prim_relation(SparseMatrix<Scalar>::from_triplets(2, 1, {{0, 0, Scalar(1)}, {1, 0, Scalar(1)}}), a, b);
  EXPECT_TRUE(D.is_function);
  EXPECT_FALSE(D.bijective);
  EXPECT_EQ(D.map, (std::vector<int>{0, 0}));
  // Swap on Q^2.
  auto [c, d] = common_spectra(Q2, Q2);
  auto S = prim_relation(SparseMatrix<Scalar>::from_triplets(2, 2, {{0, 1, Scalar(1)}, {1, 0, Scalar(1)}}), c, d);
  EXPECT_TRUE(S.bijective);
  EXPECT_EQ(S.map, (std::vector<int>{1, 0}));
  // A sum map Q^2 -> Q relates its point to nothing.
  auto [e, f] = common_spectra(Q2, ground_field());
  auto C = prim_relation(SparseMatrix<Scalar>::from_triplets(1, 2, {{0, 0, Scalar(1)}, {0, 1, Scalar(1)}}), e, f);
  EXPECT_FALSE(C.is_function);
}

TEST(PrimRelation, InvariantUnderInnerAutomorphisms) {
  // Inclusion of the diagonal Q^2 into upper triangular T2, then conjugation by u = 1 + E12.
  auto T2 = upper_triangular(2);  // E11, E12, E22
  auto Q2 = functions_on_points(2);
  auto [sL, sJ] = common_spectra(Q2, T2);
  auto phi = SparseMatrix<Scalar>::from_triplets(3, 2, {{0, 0, Scalar(1)}, {2, 1, Scalar(1)}});
  Element u{{0, Scalar(1)}, {1, Scalar(1)}, {2, Scalar(1)}}, uinv{{0, Scalar(1)}, {1, Scalar(-1)}, {2, Scalar(1)}};
  ASSERT_EQ(T2.mul(u, uinv), T2.unit());
  auto conj = T2.left_mult(u) * T2.right_mult(uinv);
  auto R1 = prim_relation(phi, sL, sJ), R2 = prim_relation(conj * phi, sL, sJ);
  EXPECT_TRUE(R1.bijective);
  EXPECT_EQ(R1.bijective, R2.bijective);
  EXPECT_EQ(R1.map, R2.map);  // inner automorphisms fix every primitive ideal
}
