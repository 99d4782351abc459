#include <gtest/gtest.h>

#include <random>

#include "gztower/classical.hpp"
#include "gztower/error.hpp"
#include "gztower/quantum.hpp"

using namespace gztower;

namespace {

NCPoly gen(int n, Copy c, int i, int j) { return NCPoly::generator(n, c, i, j); }

NCPoly scalar(int n, const Rational& c) { return NCPoly::constant(n, LambdaPoly(c)); }

NCPoly random_word_poly(int n, int max_len, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> idx(1, n), len(0, max_len), copy(0, 1), num(-4, 4);
  NCPoly p(n);
  for (int t = 0; t < terms; ++t) {
    NCPoly w = scalar(n, num(rng));
    const int l = len(rng);
    for (int k = 0; k < l; ++k) w = nc_mul(w, gen(n, copy(rng) ? Copy::R : Copy::L, idx(rng), idx(rng)));
    p += w;
  }
  return p;
}

}  // namespace

TEST(NcMul, CommutatorGivesGlRelation) {
  const int n = 2;
  const NCPoly c = commutator(gen(n, Copy::L, 1, 2), gen(n, Copy::L, 2, 1));
  EXPECT_EQ(c, gen(n, Copy::L, 1, 1) - gen(n, Copy::L, 2, 2));
}

TEST(NcMul, UnitIsNeutral) {
  std::mt19937_64 rng(1);
  const NCPoly a = random_word_poly(3, 3, 4, rng);
  EXPECT_EQ(nc_mul(a, scalar(3, 1)), a);
  EXPECT_EQ(nc_mul(scalar(3, 1), a), a);
}

TEST(NcMul, CopiesCommute) {
  const int n = 2;
  EXPECT_TRUE(commutator(gen(n, Copy::L, 1, 1), gen(n, Copy::R, 2, 2)).is_zero());
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    NCPoly left = scalar(3, 1), right = scalar(3, 1);
    std::uniform_int_distribution<int> idx(1, 3);
    for (int k = 0; k < 3; ++k) {
      left = nc_mul(left, gen(3, Copy::L, idx(rng), idx(rng)));
      right = nc_mul(right, gen(3, Copy::R, idx(rng), idx(rng)));
    }
    EXPECT_TRUE(commutator(left, right).is_zero());
  }
}

TEST(NcMul, AssociativeOnRandomTriples) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const NCPoly a = random_word_poly(n, 3, 3, rng);
      const NCPoly b = random_word_poly(n, 3, 3, rng);
      const NCPoly c = random_word_poly(n, 3, 3, rng);
      const NCPoly left = nc_mul(nc_mul(a, b), c);
      EXPECT_EQ(left, nc_mul(a, nc_mul(b, c)));
      EXPECT_TRUE(left.is_normal_ordered());
    }
  }
}

TEST(NcMul, MismatchedSizesRejected) { EXPECT_THROW(nc_mul(gen(2, Copy::L, 1, 1), gen(3, Copy::L, 1, 1)), Error); }

TEST(Rho, Values) {
  EXPECT_EQ(rho_shift(1, 1), Rational(0));
  EXPECT_EQ(rho_shift(2, 1), Rational(1, 2));
  EXPECT_EQ(rho_shift(2, 2), Rational(-1, 2));
  EXPECT_EQ(rho_shift(3, 2), Rational(0));
}

TEST(Qdet, OneByOne) {
  for (int n : {1, 2, 3}) {
    const NCPoly q = qdet(n, Copy::L, 1);
    EXPECT_EQ(q, NCPoly::constant(n, LambdaPoly::lambda()) - gen(n, Copy::L, 1, 1));
  }
}

TEST(Qdet, TwoByTwoConstantTerm) {
  const int n = 2;
  const auto coeffs = qdet(n, Copy::L, 2).lambda_coefficients();
  ASSERT_EQ(coeffs.size(), 3u);
  const NCPoly e11 = gen(n, Copy::L, 1, 1), e22 = gen(n, Copy::L, 2, 2);
  const NCPoly expected = nc_mul(e11, e22) - nc_mul(gen(n, Copy::L, 2, 1), gen(n, Copy::L, 1, 2)) +
                          (e22 - e11) * Rational(1, 2) - scalar(n, Rational(1, 4));
  EXPECT_EQ(coeffs[0], expected);
  EXPECT_EQ(coeffs[1], scalar(n, 0) - e11 - e22);
  EXPECT_EQ(coeffs[2], scalar(n, 1));
}

TEST(Qdet, N2CasimirIsCentral) {
  const int n = 2;
  const NCPoly c = qdet(n, Copy::L, 2).lambda_coefficients()[0];
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) EXPECT_TRUE(commutator(c, gen(n, Copy::L, i, j)).is_zero()) << i << j;
  EXPECT_TRUE(commutator(gen(n, Copy::L, 1, 1), c).is_zero());
}

TEST(Qdet, ClassicalLimitTopDegree) {
  for (int n : {2, 3}) {
    for (Copy copy : {Copy::L, Copy::R}) {
      for (int k = 1; k <= n; ++k) {
        const PoissonPoly image = qdet(n, copy, k).classical_image();
        const PoissonPoly classical = char_minor(n, copy == Copy::L ? MatrixSide::U : MatrixSide::UTilde, k, false);
        // At each λ-power the top E-degree part agrees; corrections sit strictly lower.
        const auto qi = image.coefficients_in(Symbol::lambda());
        const auto ci = classical.coefficients_in(Symbol::lambda());
        ASSERT_EQ(qi.size(), ci.size());
        for (std::size_t p = 0; p < qi.size(); ++p) {
          const std::uint32_t top = static_cast<std::uint32_t>(k) - static_cast<std::uint32_t>(p);
          EXPECT_EQ(qi[p].homogeneous_part(top), ci[p].homogeneous_part(top));
          const PoissonPoly diff = qi[p] - ci[p];
          if (!diff.is_zero()) EXPECT_LT(diff.degree(), top) << "n=" << n << " k=" << k << " p=" << p;
        }
      }
    }
  }
}

TEST(QuantumFamily, GeneratorCounts) {
  EXPECT_EQ(quantum_family(1).size(), 1u);
  EXPECT_EQ(quantum_family(2).size(), 4u);
  EXPECT_EQ(quantum_family(3).size(), 9u);
}

TEST(QuantumFamily, N2Members) {
  const auto fam = quantum_family(2);
  const NCPoly e11 = gen(2, Copy::L, 1, 1);
  bool saw_e11 = false, saw_r11 = false;
  for (const auto& m : fam) {
    if (m.poly == scalar(2, 0) - e11) saw_e11 = true;
    if (m.poly == scalar(2, 0) - gen(2, Copy::R, 1, 1)) saw_r11 = true;
  }
  EXPECT_TRUE(saw_e11);
  EXPECT_TRUE(saw_r11);
}

TEST(VerifyQuantum, N2AndN3BothConventions) {
  for (int n : {2, 3}) {
    const QuantumReport r = verify_quantum_commutes(n);
    EXPECT_TRUE(r.ok);
    ASSERT_TRUE(r.validated.has_value());
    EXPECT_EQ(*r.validated, RhoConvention::Local);
    ASSERT_EQ(r.conventions.size(), 2u);
    for (const auto& c : r.conventions) {
      EXPECT_TRUE(c.centrality_ok) << to_string(c.convention);
      EXPECT_TRUE(c.family_ok) << to_string(c.convention);
    }
  }
}

TEST(VerifyQuantum, LargeSizeNeedsOptIn) {
  try {
    verify_quantum_commutes(4);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(VerifyQuantum, NonCentralElementDetected) {
  // The unshifted classical determinant (no ρ) is not central for N = 2.
  const int n = 2;
  const NCPoly naive = nc_mul(gen(n, Copy::L, 1, 1), gen(n, Copy::L, 2, 2)) -
                       nc_mul(gen(n, Copy::L, 1, 2), gen(n, Copy::L, 2, 1));
  bool any_nonzero = false;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) any_nonzero = any_nonzero || !commutator(naive, gen(n, Copy::L, i, j)).is_zero();
  EXPECT_TRUE(any_nonzero);
}
