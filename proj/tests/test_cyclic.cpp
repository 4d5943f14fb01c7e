#include <gtest/gtest.h>

#include <random>

#include "cychom/cyclic.hpp"

using namespace cychom;

namespace {

std::vector<int> hc_dims(const FDAlgebra& A, int n_max, ComplexKind kind = ComplexKind::Reduced) {
  HochschildOptions opt;
  opt.kind = kind;
  opt.representatives = false;
  return hc(share(A), n_max, opt).dims();
}

SparseMatrix<Scalar> operator_matrix(int rows, int cols, const std::function<SparseVec<Scalar>(SparseVec<Scalar>)>& f) {
  SparseMatrix<Scalar> m(rows, cols);
  for (int j = 0; j < cols; ++j) m.set_col(j, f({{j, Scalar(1)}}));
  return m;
}

/// Cyclic homology from Connes' quotient complex A^{n+1}/(1 - t), built
/// directly from the unnormalized Hochschild boundary and the cyclic operator.
std::vector<int> connes_oracle(const FDAlgebra& A, int n_max) {
  BarComplex bar(make_bar_setup(share(A), ComplexKind::Unnormalized), n_max + 1);
  std::vector<SparseMatrix<Scalar>> one_minus_t;
  for (int n = 0; n <= n_max + 1; ++n)
    one_minus_t.push_back(operator_matrix(bar.dim(n), bar.dim(n), [&](SparseVec<Scalar> v) {
      return axpy(v, Scalar(-1), bar.apply_t(n, v));
    }));
  auto rank_bar = [&](int n) -> long {
    // rank of b on the quotient: rank [b_n | (1-t)_{n-1}] - rank (1-t)_{n-1}
    if (n == 0) return 0;
    SparseMatrix<Scalar> m(bar.dim(n - 1), bar.dim(n) + bar.dim(n - 1));
    m.add_block(0, 0, bar.complex().d(n));
    m.add_block(0, bar.dim(n), one_minus_t[n - 1]);
    return static_cast<long>(rank_of(m)) - static_cast<long>(rank_of(one_minus_t[n - 1]));
  };
  std::vector<int> out;
  for (int n = 0; n <= n_max; ++n)
    out.push_back(static_cast<int>(bar.dim(n) - static_cast<long>(rank_of(one_minus_t[n])) - rank_bar(n) -
                                   rank_bar(n + 1)));
  return out;
}

}  // namespace

TEST(HC, GroundField) { EXPECT_EQ(hc_dims(ground_field(), 4), (std::vector<int>{1, 0, 1, 0, 1})); }

TEST(HC, PointsAddUp) { EXPECT_EQ(hc_dims(functions_on_points(2), 4), (std::vector<int>{2, 0, 2, 0, 2})); }

TEST(HC, MatchesConnesQuotientComplex) {
  std::vector<FDAlgebra> algebras = {truncated_polynomial(2), truncated_polynomial(3), upper_triangular(2),
                                     matrix_algebra(ground_field(), 2),
                                     group_algebra(cyclic_group(3), 1)};
  for (const auto& A : algebras) {
    SCOPED_TRACE(A.name());
    const int n_max = A.dim() > 3 ? 3 : 4;
    EXPECT_EQ(hc_dims(A, n_max), connes_oracle(A, n_max));
  }
}

TEST(HC, TruncatedPolynomialsEvenOnly) {
  for (int N = 2; N <= 4; ++N) EXPECT_EQ(hc_dims(truncated_polynomial(N), 4), (std::vector<int>{N, 0, N, 0, N}));
}

TEST(HC, DegreeZeroEqualsHochschild) {
  std::vector<FDAlgebra> algebras = {truncated_polynomial(3), upper_triangular(2),
                                     group_algebra(symmetric_group_3(), 1), group_algebra(quaternion_group(), 1)};
  for (const auto& A : algebras) {
    HochschildOptions opt;
    opt.representatives = false;
    EXPECT_EQ(hc(share(A), 0, opt).dims()[0], hh(share(A), 0, opt).dims()[0]) << A.name();
  }
}

TEST(HC, KindsAgree) {
  for (const auto& A : {truncated_polynomial(2), functions_on_points(2), upper_triangular(2)}) {
    auto r = hc_dims(A, 3, ComplexKind::Reduced);
    EXPECT_EQ(r, hc_dims(A, 3, ComplexKind::Normalized)) << A.name();
    EXPECT_EQ(r, hc_dims(A, 3, ComplexKind::Unnormalized)) << A.name();
  }
}

TEST(CyclicOperators, IdentitiesOnRandomChains) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coeff(-2, 2);
  auto random_chain = [&](int dim) {
    SparseVec<Scalar> v;
    for (int i = 0; i < dim; ++i)
      if (int x = coeff(rng)) v.emplace_back(i, Scalar(x));
    return v;
  };
  for (auto kind : {ComplexKind::Unnormalized, ComplexKind::Normalized, ComplexKind::Reduced}) {
    for (const auto& A : {truncated_polynomial(3), upper_triangular(2), group_algebra(cyclic_group(3), 3)}) {
      SCOPED_TRACE(A.name() + " " + to_string(kind));
      BarComplex bar(make_bar_setup(share(A), kind), 4);
      for (int n = 0; n <= 2; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
          auto v = random_chain(bar.dim(n));
          EXPECT_TRUE(bar.apply_B(n + 1, bar.apply_B(n, v)).empty());
          auto bB = bar.apply_boundary(n + 1, bar.apply_B(n, v));
          auto Bb = n >= 1 ? bar.apply_B(n - 1, bar.apply_boundary(n, v)) : SparseVec<Scalar>{};
          EXPECT_TRUE(axpy(bB, Scalar(1), Bb).empty());
          if (kind == ComplexKind::Unnormalized) {
            auto w = v;
            for (int k = 0; k <= n; ++k) w = bar.apply_t(n, w);
            EXPECT_EQ(w, v);
          }
        }
      }
    }
  }
}

TEST(CyclicComplex, TotalDifferentialSquaresToZero) {
  CyclicComplex cc(share(truncated_polynomial(3)), 5);
  EXPECT_TRUE(cc.total().is_complex());
  CyclicComplex gc(share(group_algebra(symmetric_group_3(), 1)), 4);
  EXPECT_TRUE(gc.total().is_complex());
}

TEST(CyclicComplex, SNeedsDegreeTwo) {
  CyclicComplex cc(share(ground_field()), 3);
  EXPECT_THROW(apply_S(cc, 1, {{0, Scalar(1)}}), DegreeTooLow);
  // The class of 1 in HC_2 of Q maps to the class of 1 in HC_0.
  HomologyDegree h2 = homology_degree(cc.total(), 2, true);
  ASSERT_EQ(h2.dim, 1);
  auto s = apply_S(cc, 2, h2.representatives->basis()[0]);
  EXPECT_FALSE(s.empty());
}

TEST(CyclicComplex, NonUnitalRejected) {
  FDAlgebra zero_square(1, {"x"}, {Element{}}, std::nullopt, "x^2=0");
  EXPECT_THROW(CyclicComplex(share(zero_square), 2), NonUnital);
}

TEST(SBI, ExactOnExamples) {
  std::vector<FDAlgebra> algebras = {ground_field(), truncated_polynomial(2), upper_triangular(2),
                                     matrix_algebra(ground_field(), 2), group_algebra(symmetric_group_3(), 1)};
  for (const auto& A : algebras) {
    SCOPED_TRACE(A.name());
    const int n_max = A.dim() > 4 ? 3 : 4;
    auto r = sbi_check(share(A), n_max);
    for (const auto& node : r.nodes)
      EXPECT_TRUE(node.exact) << node.name << " dim " << node.dim << " in " << node.rank_in << " out "
                              << node.rank_out << " composite " << node.composite_rank;
    EXPECT_TRUE(r.exact);
    EXPECT_EQ(r.nodes.size(), static_cast<std::size_t>(3 * n_max + 1));
  }
}

TEST(SBI, GroundFieldRanks) {
  auto r = sbi_check(share(ground_field()), 4);
  // HH_0 -> HC_0 is onto and S: HC_{2k+2} -> HC_{2k} is an isomorphism.
  EXPECT_EQ(r.rank_I[0], 1u);
  EXPECT_EQ(r.rank_S[2], 1u);
  EXPECT_EQ(r.rank_S[4], 1u);
}

TEST(Stabilization, Examples) {
  auto q = hp_stabilization(share(truncated_polynomial(2)));
  EXPECT_TRUE(q.even_stable);
  EXPECT_TRUE(q.odd_stable);
  EXPECT_EQ(q.even_dim, 1);
  EXPECT_EQ(q.odd_dim, 0);
  auto p = hp_stabilization(share(functions_on_points(3)));
  EXPECT_EQ(p.even_dim, 3);
  auto t = hp_stabilization(share(upper_triangular(2)));
  EXPECT_EQ(t.even_dim, 2);
  EXPECT_EQ(t.odd_dim, 0);
  EXPECT_THROW(hp_stabilization(share(ground_field()), 3), InvalidArgument);
}
