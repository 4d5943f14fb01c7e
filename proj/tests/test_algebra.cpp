#include <gtest/gtest.h>

#include "cychom/algebra.hpp"

using namespace cychom;

namespace {

SparseVec<Scalar> vec(std::vector<long> v) {
  SparseVec<Scalar> out;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i]) out.emplace_back(i, Scalar(v[i]));
  return out;
}

SparseMatrix<Scalar> perm_matrix(const std::vector<int>& p) {
  SparseMatrix<Scalar> m(static_cast<int>(p.size()), static_cast<int>(p.size()));
  for (int i = 0; i < static_cast<int>(p.size()); ++i) m.set_col(i, basis_element(p[i]));
  return m;
}

}  // namespace

TEST(Validate, MatrixAlgebraIsValidAndUnital) {
  auto m2 = matrix_algebra(ground_field(), 2);
  auto r = validate(m2);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(m2.is_unital());
  EXPECT_EQ(m2.dim(), 4);
}

TEST(Validate, ReportsNonAssociativeTriple) {
  // e1 e1 = e2, all other products zero: (e1 e1) e1 = e2 e1 = 0 = e1 (e1 e1).
  // Make it fail by setting e2 e1 = e2 while e1 e2 = 0.
  std::vector<Element> p(4);
  p[0] = basis_element(1);
  p[2] = basis_element(1);
  FDAlgebra bad(1, {"e1", "e2"}, p, std::nullopt, "bad");
  auto r = validate(bad);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.failing_triple);
  EXPECT_EQ(*r.failing_triple, (std::array<int, 3>{0, 0, 0}));
}

TEST(Validate, EveryConstructorOutputIsValid) {
  std::vector<FDAlgebra> algs{ground_field(),
                              truncated_polynomial(3),
                              functions_on_points(4),
                              matrix_algebra(functions_on_points(2), 2),
                              matrix_algebra(truncated_polynomial(2), 2),
                              direct_sum(truncated_polynomial(2), matrix_algebra(ground_field(), 2)),
                              unitalization(truncated_polynomial(2)),
                              upper_triangular(3),
                              group_algebra(symmetric_group_3()),
                              group_algebra(quaternion_group()),
                              group_algebra(dihedral_group_8())};
  for (const auto& a : algs) EXPECT_TRUE(validate(a).ok) << a.name() << ": " << validate(a).message;
}

TEST(GroupAlgebra, Examples) {
  auto z2 = group_algebra(cyclic_group(2));
  EXPECT_EQ(z2.dim(), 2);
  EXPECT_EQ(z2.mul(basis_element(1), basis_element(1)), basis_element(0));
  EXPECT_EQ(group_algebra(symmetric_group_3()).dim(), 6);
  EXPECT_EQ(group_algebra(cyclic_group(1)).dim(), 1);
}

TEST(MatrixAlgebra, Examples) {
  EXPECT_EQ(matrix_algebra(ground_field(), 2).dim(), 4);
  EXPECT_EQ(matrix_algebra(functions_on_points(2), 2).dim(), 8);
  auto m3 = matrix_algebra(ground_field(), 3);
  EXPECT_EQ(m3.unit(), vec({1, 0, 0, 0, 1, 0, 0, 0, 1}));
}

TEST(Constructors, Quotients) {
  auto A = share(truncated_polynomial(3));
  auto J = ideal_generated_by(A, {basis_element(1)});
  EXPECT_EQ(J.space.dim(), 2);
  auto q = quotient_by(*A, J.space);
  EXPECT_EQ(q.algebra.dim(), 1);
  EXPECT_TRUE(validate(q.algebra).ok);
  auto pi = make_linear_map(A, share(q.algebra), q.projection);
  EXPECT_TRUE(pi.multiplicative);
  EXPECT_TRUE(pi.unital);
}

TEST(Constructors, UnitalizationOfZeroAlgebra) {
  FDAlgebra z(1, {"a"}, {Element{}}, std::nullopt, "zero");
  auto plus = unitalization(z);
  EXPECT_EQ(plus.dim(), 2);
  EXPECT_TRUE(validate(plus).ok);
  EXPECT_EQ(plus.products(), truncated_polynomial(2).products());
}

TEST(Constructors, SubalgebraClosure) {
  auto m2 = matrix_algebra(ground_field(), 2);
  auto s = multiplicative_closure(m2, {basis_element(0), basis_element(1)});
  EXPECT_EQ(s.dim(), 2);  // span{E11, E12}
  EXPECT_EQ(multiplicative_closure(m2, s.basis()), s);
  auto sub = algebra_on_subspace(m2, s);
  EXPECT_TRUE(validate(sub).ok);
  EXPECT_FALSE(sub.is_unital());  // E11 is only a left unit
  auto diag = subalgebra_closure(m2, {basis_element(0)});
  EXPECT_TRUE(diag.is_unital());
  EXPECT_THROW(multiplicative_closure(group_algebra(symmetric_group_3()), {basis_element(1), basis_element(3)}, 3),
               ClosureOverflow);
}

TEST(Ideals, Generated) {
  auto q2 = share(functions_on_points(2));
  EXPECT_EQ(ideal_generated_by(q2, {basis_element(0)}).space, Subspace<Scalar>::span(2, {basis_element(0)}));
  auto m2 = share(matrix_algebra(ground_field(), 2));
  EXPECT_EQ(ideal_generated_by(m2, {basis_element(0)}).space.dim(), 4);
  auto t3 = share(truncated_polynomial(3));
  EXPECT_EQ(ideal_generated_by(t3, {basis_element(1)}).space, Subspace<Scalar>::span(3, {vec({0, 1}), vec({0, 0, 1})}));
  EXPECT_THROW(make_ideal(m2, Subspace<Scalar>::span(4, {basis_element(0)})), ValidationError);
}

TEST(Bimodules, TwistedExamples) {
  auto q2 = share(functions_on_points(2));
  auto id = twisted_bimodule(q2, SparseMatrix<Scalar>::identity(2));
  auto diag = diagonal_bimodule(q2);
  EXPECT_EQ(id.left, diag.left);
  EXPECT_EQ(id.right, diag.right);
  auto sw = twisted_bimodule(q2, perm_matrix({1, 0}));
  EXPECT_TRUE(validate_bimodule(sw));
  // p0 . p1 = p0 * swap(p1) = p0 * p0 = p0.
  EXPECT_EQ(sw.act_right(0, 1), basis_element(0));
  EXPECT_TRUE(sw.act_right(0, 0).empty());

  auto dual = share(truncated_polynomial(2));
  auto neg = SparseMatrix<Scalar>::from_triplets(2, 2, {{0, 0, Scalar(1)}, {1, 1, Scalar(-1)}});
  EXPECT_TRUE(validate_bimodule(twisted_bimodule(dual, neg)));
  auto not_auto = SparseMatrix<Scalar>::from_triplets(2, 2, {{0, 0, Scalar(1)}, {0, 1, Scalar(1)}});
  EXPECT_THROW(twisted_bimodule(dual, not_auto), NotAutomorphism);
}

TEST(GroupMetadata, Examples) {
  auto s3 = group_metadata(symmetric_group_3());
  std::vector<int> sizes;
  for (const auto& c : s3.classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  EXPECT_EQ(sizes, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(group_metadata(cyclic_group(4)).classes.size(), 4u);
  const auto G = symmetric_group_3();
  auto md = group_metadata(G);
  for (const auto& c : md.classes)
    if (c.rep_order() == 2) EXPECT_EQ(c.centralizer.size(), 2u);
  EXPECT_EQ(group_metadata(dihedral_group_8()).classes.size(), 5u);
  EXPECT_EQ(group_metadata(quaternion_group()).classes.size(), 5u);
  EXPECT_EQ(quaternion_group().exponent(), 4);
}

TEST(GroupAction, RejectsBadMatrices) {
  auto q3 = share(functions_on_points(3));
  EXPECT_NO_THROW(permutation_action(cyclic_group(3), q3, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}));
  // Not a homomorphism: g acts as a transposition in Z/3.
  EXPECT_THROW(permutation_action(cyclic_group(3), q3, {{0, 1, 2}, {1, 0, 2}, {1, 0, 2}}), ValidationError);
  auto dual = share(truncated_polynomial(2));
  auto scale2 = SparseMatrix<Scalar>::from_triplets(2, 2, {{0, 0, Scalar(2)}, {1, 1, Scalar(2)}});
  EXPECT_THROW(make_group_action(cyclic_group(2), dual, {SparseMatrix<Scalar>::identity(2), scale2}), NotAutomorphism);
}
