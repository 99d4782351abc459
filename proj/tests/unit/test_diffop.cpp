#include <gtest/gtest.h>

#include "gztower/diffop.hpp"
#include "gztower/error.hpp"

using namespace gztower;

namespace {

PoissonPoly g(int n, int i, int j) { return PoissonPoly::symbol(n, Symbol::g(i, j)); }

}  // namespace

TEST(DiffOp, LeftCommutatorOnG11) {
  const int n = 2;
  const PoissonPoly f = g(n, 1, 1);
  const PoissonPoly lhs = apply_commutator(nabla_left(n, 1, 2), nabla_left(n, 2, 1), f);
  const PoissonPoly rhs = nabla_left(n, 1, 1).apply(f) - nabla_left(n, 2, 2).apply(f);
  EXPECT_EQ(lhs, rhs);
  EXPECT_FALSE(rhs.is_zero());
}

TEST(DiffOp, LeftAndRightCommuteOnMonomials) {
  const int n = 2;
  const PoissonPoly f = g(n, 1, 1) * g(n, 1, 2) * g(n, 2, 1) + g(n, 2, 2) * g(n, 2, 2);
  EXPECT_TRUE(apply_commutator(nabla_left(n, 1, 1), nabla_right(n, 2, 2), f).is_zero());
}

TEST(DiffOp, KillsConstants) {
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      EXPECT_TRUE(nabla_left(2, i, j).apply(PoissonPoly::constant(2, 1)).is_zero());
      EXPECT_TRUE(nabla_right(2, i, j).apply(PoissonPoly::constant(2, 1)).is_zero());
    }
}

TEST(DiffOp, ActsOnDeterminantByTrace) {
  // ∇_L^{ii} is g_{ki}∂/∂g_{ki} summed over k: each column-i Euler operator fixes det g.
  const int n = 2;
  const PoissonPoly det = g(n, 1, 1) * g(n, 2, 2) - g(n, 1, 2) * g(n, 2, 1);
  EXPECT_EQ(nabla_left(n, 1, 1).apply(det), det);
  EXPECT_EQ(nabla_right(n, 2, 2).apply(det), -det);
}

TEST(DiffOp, RealizationRelationsExact) {
  for (int n : {1, 2, 3}) {
    const DiffOpReport r = diffop_realization_check(n, 3, 42);
    EXPECT_TRUE(r.ok) << r.witness;
    EXPECT_EQ(r.relations_checked, static_cast<std::size_t>(3 * n * n * n * n * 3));
  }
}

TEST(DiffOp, RejectsNonGroupVariables) {
  PolyDiffOp op(2);
  EXPECT_THROW(op.add(PoissonPoly::constant(2, 1), Symbol::u(1, 1)), Error);
}
