#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gztower/classical.hpp"
#include "gztower/error.hpp"

using namespace gztower;

namespace {

PoissonPoly sym(int n, Symbol s) { return PoissonPoly::symbol(n, s); }

FamilySpec gz(int n, Side side = Side::Both) { return {FamilyKind::GzPrincipal, n, side, std::nullopt}; }

}  // namespace

TEST(CharMinor, OneByOne) {
  const PoissonPoly expected = sym(2, Symbol::lambda()) - sym(2, Symbol::u(1, 1));
  EXPECT_EQ(char_minor(2, MatrixSide::U, 1, false), expected);
}

TEST(CharMinor, TwoByTwoExpansion) {
  const int n = 2;
  const PoissonPoly l = sym(n, Symbol::lambda());
  const PoissonPoly u11 = sym(n, Symbol::u(1, 1)), u22 = sym(n, Symbol::u(2, 2));
  const PoissonPoly expected = l * l - (u11 + u22) * l + (u11 * u22 - sym(n, Symbol::u(1, 2)) * sym(n, Symbol::u(2, 1)));
  EXPECT_EQ(char_minor(n, MatrixSide::U, 2, false), expected);
}

TEST(CharMinor, CornerHasNoLambda) {
  EXPECT_EQ(char_minor(2, MatrixSide::U, 1, true), -sym(2, Symbol::u(2, 1)));
}

TEST(CharMinor, EvaluationMatchesNumericDeterminant) {
  std::mt19937_64 rng(1);
  const CanonicalPoint pt = random_canonical_point(3, rng);
  const cplx lambda(0.7, -0.2);
  for (MatrixSide side : {MatrixSide::U, MatrixSide::UTilde}) {
    const CMatrix m = side == MatrixSide::U ? u_as_canonical(pt) : utilde_as_canonical(pt);
    for (int k = 1; k <= 3; ++k) {
      const CMatrix block = lambda * CMatrix::Identity(k, k) - m.topLeftCorner(k, k);
      EXPECT_NEAR(std::abs(evaluate(char_minor(3, side, k, false), pt, lambda) - block.determinant()), 0.0, 1e-10);
    }
  }
}

TEST(CharMinor, FullDeterminantIsConjugationInvariant) {
  std::mt19937_64 rng(2);
  const CanonicalPoint pt = random_canonical_point(3, rng);
  const PoissonPoly full = char_minor(3, MatrixSide::U, 3, false);
  // (g, p) → (g h, p h⁻ᵀ) sends u = pᵀg to h⁻¹ u h.
  const CMatrix h = random_complex_matrix(3, 3, rng);
  const CanonicalPoint moved(pt.g() * h, pt.p() * h.inverse().transpose());
  EXPECT_NEAR((u_as_canonical(moved) - h.inverse() * u_as_canonical(pt) * h).norm(), 0.0, 1e-9);
  const cplx lambda(0.1, 0.9);
  EXPECT_NEAR(std::abs(evaluate(full, pt, lambda) - evaluate(full, moved, lambda)), 0.0, 1e-9);
}

TEST(BuildFamily, GzN2Members) {
  const CommutingFamily fam = build_family(gz(2));
  ASSERT_EQ(fam.members.size(), 4u);
  const int n = 2;
  std::set<std::string> rendered;
  for (const auto& m : fam.members) rendered.insert(m.poly.to_string());
  // Coefficients up to sign: −u11; −(u11+u22); u11u22 − u12u21; −ũ11.
  EXPECT_TRUE(rendered.count((-sym(n, Symbol::u(1, 1))).to_string()));
  EXPECT_TRUE(rendered.count((-sym(n, Symbol::u(1, 1)) - sym(n, Symbol::u(2, 2))).to_string()));
  EXPECT_TRUE(rendered.count((sym(n, Symbol::u(1, 1)) * sym(n, Symbol::u(2, 2)) -
                              sym(n, Symbol::u(1, 2)) * sym(n, Symbol::u(2, 1))).to_string()));
  EXPECT_TRUE(rendered.count((-sym(n, Symbol::utilde(1, 1))).to_string()));
}

TEST(BuildFamily, N1SingleGenerator) {
  const CommutingFamily fam = build_family(gz(1));
  ASSERT_EQ(fam.members.size(), 1u);
  EXPECT_EQ(fam.members[0].poly, -sym(1, Symbol::u(1, 1)));
}

TEST(BuildFamily, N3HasNineGenerators) { EXPECT_EQ(build_family(gz(3)).members.size(), 9u); }

TEST(BuildFamily, ShiftMatrixPresenceRule) {
  EXPECT_THROW(build_family({FamilyKind::MfShift, 2, Side::Left, std::nullopt}), Error);
  EXPECT_THROW(build_family({FamilyKind::GzPrincipal, 2, Side::Both, std::vector<Rational>(4, 1)}), Error);
  EXPECT_THROW(build_family({FamilyKind::MfShift, 2, Side::Left, std::vector<Rational>(3, 1)}), Error);
}

TEST(BuildFamily, MfDiagonalShiftN2) {
  std::vector<Rational> a{1, 0, 0, 0};
  const CommutingFamily fam = build_family({FamilyKind::MfShift, 2, Side::Left, a});
  // det(u − μA − λ): λ¹ coefficient is −(u11 + u22 − μ), split by μ-degree.
  bool found_lambda_mu0 = false;
  for (const auto& m : fam.members) {
    if (m.lambda_power == 1 && m.mu_power == 0) {
      found_lambda_mu0 = true;
      EXPECT_EQ(m.poly, -sym(2, Symbol::u(1, 1)) - sym(2, Symbol::u(2, 2)));
    }
    EXPECT_FALSE(m.poly.is_zero());
  }
  EXPECT_TRUE(found_lambda_mu0);
  EXPECT_TRUE(verify_commutes(fam).ok);
}

TEST(Commutes, GzPrincipalN2AndN3) {
  const CommuteReport r2 = verify_commutes(build_family(gz(2)));
  EXPECT_TRUE(r2.ok);
  EXPECT_EQ(r2.pairs_checked, 6u);
  const CommuteReport r3 = verify_commutes(build_family(gz(3)));
  EXPECT_TRUE(r3.ok);
  EXPECT_EQ(r3.pairs_checked, 36u);
}

TEST(Commutes, GzPrincipalN4) {
  const CommuteReport r = verify_commutes(build_family(gz(4)));
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.pairs_checked, 120u);
}

TEST(Commutes, MishchenkoFomenkoRandomShifts) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 3; ++trial) {
    const CommuteReport r =
        verify_commutes(build_family({FamilyKind::MfShift, 3, Side::Left, random_rational_matrix(3, rng)}));
    EXPECT_TRUE(r.ok) << r.witness_pair.value_or("") << " " << r.witness_terms.value_or("");
  }
}

TEST(Commutes, CornerFamilyAllSides) {
  for (int n : {2, 3}) {
    for (Side side : {Side::Left, Side::Right, Side::Both}) {
      const CommuteReport r = verify_commutes(build_family({FamilyKind::GzCorner, n, side, std::nullopt}));
      EXPECT_TRUE(r.ok) << "n=" << n << " side=" << to_string(side);
    }
  }
}

TEST(Commutes, NonCommutingPairIsReportedAsFinding) {
  CommutingFamily fam = build_family(gz(2, Side::Left));
  fam.members.push_back({"u12", sym(2, Symbol::u(1, 2)), 'L', 0, 0, 0});
  const CommuteReport r = verify_commutes(fam);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.witness_pair.has_value());
  EXPECT_GT(r.max_nonzero_terms, 0u);
}

TEST(Trivial, RightMomentumFormCommutes) {
  for (int n : {1, 2, 3}) {
    const TrivialReport r = verify_trivial_numeric(n, 10, 4);
    EXPECT_TRUE(r.ok) << "n=" << n << " max=" << r.max_abs_bracket;
    EXPECT_LT(r.max_abs_bracket, 1e-5);
  }
}

TEST(Trivial, LeftMomentumFormDoesNotCommute) {
  const TrivialReport r = verify_trivial_numeric(2, 5, 4, MatrixSide::U);
  EXPECT_FALSE(r.ok);
}

TEST(Rank, PrincipalFamilyHasFullRank) {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3}) {
    const CommutingFamily fam = build_family(gz(n));
    for (int trial = 0; trial < 5; ++trial) {
      EXPECT_EQ(independence_rank(fam, random_canonical_point(n, rng)), n * n);
    }
  }
}

TEST(Rank, OneSidedFamilyIsSmaller) {
  std::mt19937_64 rng(6);
  const CommutingFamily fam = build_family(gz(3, Side::Left));
  EXPECT_EQ(independence_rank(fam, random_canonical_point(3, rng)), 6);
}
