#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "gztower/error.hpp"
#include "gztower/tower.hpp"

using namespace gztower;

namespace {

constexpr double kPi = std::numbers::pi;

OrbitPoint point3() { return sample_orbit({cplx(1.0), cplx(2.0), cplx(3.0)}, 7); }

}  // namespace

TEST(Differentials, ExactSumRule) {
  const std::vector<Rational> gamma{0, 1, Rational(7, 2), -2};
  const auto r = differentials_exact(gamma);
  ASSERT_EQ(r.size(), gamma.size());
  for (std::size_t k = 0; k < gamma.size(); ++k) {
    Rational s = 0;
    for (const auto& row : r) s += row[k];
    EXPECT_EQ(s, Rational(k + 1 == gamma.size() ? 1 : 0)) << "k=" << k + 1;
  }
}

TEST(Differentials, TwoPunctures) {
  const ResidueTable t = differentials({cplx(0.0), cplx(1.0)});
  EXPECT_NEAR(std::abs(t.r[0][0] + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.r[1][0] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.r[0][1]), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(t.r[1][1] - 1.0), 0.0, 1e-15);
  const auto exact = differentials_exact({0, 1});
  EXPECT_EQ(exact[0][0], Rational(-1));
  EXPECT_EQ(exact[1][1], Rational(1));
}

TEST(Differentials, FloatSumRule) {
  const ResidueTable t = differentials({cplx(0.3, 1.0), cplx(-1.0, 0.2), cplx(2.0, -0.5)});
  const auto sums = t.column_sums();
  EXPECT_NEAR(std::abs(sums[0]), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(sums[1]), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(sums[2] - 1.0), 0.0, 1e-13);
}

TEST(Differentials, RepeatedPunctureRejected) {
  try {
    differentials({cplx(1.0), cplx(1.0)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SquareFreeViolation);
  }
}

TEST(PathLog, FarPathIsPrincipal) {
  const PathLog pl = path_log(cplx(1.0), cplx(0.0, 1.0), cplx(-3.0, -3.0));
  EXPECT_FALSE(pl.deflected);
  EXPECT_NEAR(std::abs(pl.value - std::log(cplx(3.0, 4.0) / cplx(4.0, 3.0))), 0.0, 1e-15);
}

TEST(PathLog, PunctureOnSegmentKeptOnLeft) {
  const PathLog pl = path_log(cplx(-1.0), cplx(1.0), cplx(0.0));
  EXPECT_TRUE(pl.deflected);
  EXPECT_NEAR(std::abs(pl.value - cplx(0.0, kPi)), 0.0, 1e-15);
}

TEST(PathLog, PunctureJustRightOfPathWindsPositively) {
  const PathLog pl = path_log(cplx(-1.0), cplx(1.0), cplx(0.0, -1e-4));
  EXPECT_TRUE(pl.deflected);
  EXPECT_GT(pl.value.imag(), kPi);
  EXPECT_LT(pl.value.imag(), 2.0 * kPi);
}

TEST(PathLog, PunctureJustLeftOfPathNeedsNoDetour) {
  const PathLog pl = path_log(cplx(-1.0), cplx(1.0), cplx(0.0, 1e-4));
  EXPECT_FALSE(pl.deflected);
  EXPECT_GT(pl.value.imag(), 0.0);
  EXPECT_LT(pl.value.imag(), kPi);
}

TEST(PathLog, EndpointOnPunctureThrows) {
  EXPECT_THROW(path_log(cplx(0.0), cplx(1.0), cplx(0.0)), Error);
  EXPECT_THROW(path_log(cplx(5e-4), cplx(-1.0), cplx(0.0)), Error);
}

TEST(Tower, LevelShapes) {
  const TowerDescriptor t = build_tower(point3().u);
  ASSERT_EQ(t.levels.size(), 3u);
  for (int m = 1; m <= 3; ++m) {
    const TowerLevel& l = t.levels[m - 1];
    EXPECT_EQ(l.n, m);
    EXPECT_EQ(l.gamma.size(), static_cast<std::size_t>(m));
    EXPECT_EQ(l.h.size(), static_cast<std::size_t>(m + 1));
    EXPECT_EQ(l.h[0], cplx(1.0));
    EXPECT_EQ(l.tau.size(), m < 3 ? static_cast<std::size_t>(m) : 0u);
    EXPECT_EQ(l.e.size(), m < 3 ? static_cast<std::size_t>(m - 1) : 0u);
    for (const cplx& j : l.jacobian) EXPECT_GT(std::abs(j), 0.0);
  }
}

TEST(Tower, OneByOne) {
  CMatrix u(1, 1);
  u << cplx(2.0, 1.0);
  const TowerDescriptor t = build_tower(u);
  ASSERT_EQ(t.levels.size(), 1u);
  EXPECT_TRUE(t.levels[0].tau.empty());
  EXPECT_NEAR(std::abs(t.levels[0].h[1] + cplx(2.0, 1.0)), 0.0, 1e-15);
}

TEST(Tower, LiteralLevelOneAngleVanishes) {
  // Level 1 has no e's and no lower γ's: both sums are empty.
  TowerOptions opts;
  opts.convention = AngleConvention::Literal;
  const TowerDescriptor t = build_tower(point3().u, opts);
  EXPECT_NEAR(std::abs(t.levels[0].tau[0]), 0.0, 1e-15);
  const TowerDescriptor aug = build_tower(point3().u);
  EXPECT_NEAR(std::abs(aug.levels[0].tau[0] - std::log(aug.levels[0].c_lead)), 0.0, 1e-12);
}

TEST(Angles, CoincidentDivisorsGiveZero) {
  TowerLevel level;
  level.n = 2;
  level.gamma = {cplx(0.5, 0.2), cplx(-1.0, 0.7)};
  level.e = {cplx(1.3, -0.4)};
  level.base_point = cplx(0.37, 1.91);
  level.residues = differentials(level.gamma);
  compute_angles(level, {cplx(1.3, -0.4)}, AngleConvention::Literal);
  ASSERT_EQ(level.tau.size(), 2u);
  EXPECT_EQ(level.tau[0], cplx(0.0));
  EXPECT_EQ(level.tau[1], cplx(0.0));
  for (const cplx& j : level.jacobian) EXPECT_NEAR(std::abs(j - 1.0), 0.0, 1e-15);
}

TEST(Tower, BasePointChangesAnglesByPeriods) {
  const CMatrix u = point3().u;
  TowerOptions a, b;
  b.base_point = cplx(-2.3, -0.8);
  const TowerDescriptor ta = build_tower(u, a), tb = build_tower(u, b);
  for (int m = 1; m <= 2; ++m) {
    const TowerLevel& la = ta.levels[m - 1];
    const TowerLevel& lb = tb.levels[m - 1];
    // Δτ_k = 2πi Σ_j n_j r[j][m−k] with integers n_j shared across k.
    Eigen::MatrixXcd r(m, m);
    Eigen::VectorXcd d(m);
    for (int k = 1; k <= m; ++k) {
      for (int j = 0; j < m; ++j) r(k - 1, j) = la.residues.r[j][m - k];
      d(k - 1) = (lb.tau[k - 1] - la.tau[k - 1]) / cplx(0.0, 2.0 * kPi);
    }
    const Eigen::VectorXcd windings = r.fullPivLu().solve(d);
    for (int j = 0; j < m; ++j) {
      EXPECT_NEAR(windings(j).imag(), 0.0, 1e-9) << "level " << m;
      EXPECT_NEAR(windings(j).real(), std::round(windings(j).real()), 1e-9) << "level " << m;
    }
  }
}

TEST(Abel, DerivativeIsDifferential) {
  const std::vector<cplx> gamma{cplx(0.2, 0.1), cplx(-1.0, 0.4), cplx(1.5, -0.3)};
  const ResidueTable t = differentials(gamma);
  const cplx base(0.37, 1.91), z(0.6, -0.7);
  const double h = 1e-6;
  for (int k = 1; k <= 3; ++k) {
    const cplx fd = (abel_map(t, k, {z + h}, {}, base) - abel_map(t, k, {z - h}, {}, base)) / (2.0 * h);
    cplx a(1.0);
    for (const cplx& g : gamma) a *= z - g;
    EXPECT_NEAR(std::abs(fd - std::pow(z, k - 1) / a), 0.0, 1e-7) << "k=" << k;
  }
}

TEST(ActionAngle, AugmentedIsCanonical) {
  const CMatrix u = point3().u;
  const PairingReport r = verify_action_angle(u, AngleConvention::Augmented, 1);
  EXPECT_TRUE(r.ok) << r.witness << " defect " << r.max_defect;
  const OrbitPoint p2 = sample_orbit({cplx(1.0), cplx(2.0)}, 3);
  EXPECT_TRUE(verify_action_angle(p2.u, AngleConvention::Augmented, 1).ok);
}

TEST(ActionAngle, LiteralFails) {
  const PairingReport r = verify_action_angle(point3().u, AngleConvention::Literal, 2);
  EXPECT_FALSE(r.ok);
  EXPECT_GT(r.max_defect, 1e-2);
}

TEST(ActionAngle, ValuesAndLabelsAlign) {
  const TowerDescriptor t = build_tower(point3().u);
  EXPECT_EQ(action_angle_values(t).size(), action_angle_labels(3).size());
  EXPECT_EQ(action_angle_labels(3).size(), 9u);
}
