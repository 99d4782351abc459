#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "gztower/error.hpp"
#include "gztower/orbit.hpp"

using namespace gztower;

namespace {

std::vector<cplx> eigenvalues(std::initializer_list<double> v) { return {v.begin(), v.end()}; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(SampleOrbit, SpectrumIsPreserved) {
  const OrbitPoint pt = sample_orbit(eigenvalues({1, 2, 3}), 7);
  ASSERT_EQ(pt.n(), 3);
  const auto roots = polynomial_roots(principal_minor(pt.u, 3));
  const auto matched = match_to_reference(pt.spectrum, roots);
  ASSERT_EQ(matched.size(), 3u);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(matched[k] - pt.spectrum[k]), 0.0, 1e-10);
  EXPECT_TRUE(is_regular(pt.u));
}

TEST(SampleOrbit, DeterministicInSeed) {
  const OrbitPoint a = sample_orbit(eigenvalues({1, 2}), 3);
  const OrbitPoint b = sample_orbit(eigenvalues({1, 2}), 3);
  const OrbitPoint c = sample_orbit(eigenvalues({1, 2}), 4);
  EXPECT_EQ((a.u - b.u).norm(), 0.0);
  EXPECT_GT((a.u - c.u).norm(), 0.0);
}

TEST(SampleOrbit, OneByOne) {
  const OrbitPoint pt = sample_orbit({cplx(2.5, 1.0)}, 1);
  ASSERT_EQ(pt.n(), 1);
  EXPECT_EQ(pt.u(0, 0), cplx(2.5, 1.0));
}

TEST(SampleOrbit, RejectsBadSpectra) {
  EXPECT_EQ(code_of([] { sample_orbit({}, 1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { sample_orbit(eigenvalues({1, 1}), 1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { sample_orbit({cplx(std::numeric_limits<double>::quiet_NaN()), cplx(1.0)}, 1); }),
            ErrorCode::InvalidArgument);
}

TEST(SampleOrbit, ImpossibleConditioningExhaustsRetries) {
  SampleOptions opts;
  opts.condition_cap = 1.0;
  opts.max_retries = 3;
  EXPECT_EQ(code_of([&] { sample_orbit(eigenvalues({1, 2}), 1, opts); }), ErrorCode::RetryExhausted);
}

TEST(Minors, PrincipalAndLowering) {
  CMatrix u(2, 2);
  u << 1.0, 2.0, 3.0, 4.0;
  const ComplexPoly a1 = principal_minor(u, 1);
  EXPECT_EQ(a1.degree(), 1);
  EXPECT_NEAR(std::abs(a1(cplx(1.0))), 0.0, 1e-15);
  EXPECT_EQ(principal_minor(u, 0).degree(), 0);
  // rows {2}, cols {1} of λ − u: −u21.
  const ComplexPoly c1 = lowering_minor(u, 1);
  EXPECT_EQ(c1.degree(), 0);
  EXPECT_NEAR(std::abs(c1.c[0] + 3.0), 0.0, 1e-15);
  const ComplexPoly c1t = lowering_minor(u, 1, {1, true});
  EXPECT_NEAR(std::abs(c1t.c[0] + 2.0), 0.0, 1e-15);
}

TEST(Chart, ResidualsAreSmall) {
  for (auto [s, seed] : {std::pair{eigenvalues({1, 2}), 3}, std::pair{eigenvalues({1, 2, 3}), 7}}) {
    const OrbitPoint pt = sample_orbit(s, seed);
    const GZChart chart = gz_forward(pt);
    ASSERT_EQ(chart.gamma.size(), static_cast<std::size_t>(pt.n()));
    ASSERT_EQ(chart.theta.size(), static_cast<std::size_t>(pt.n() - 1));
    const ChartResiduals r = chart_residuals(pt.u, chart);
    EXPECT_LT(r.minor, 1e-10);
    EXPECT_LT(r.c_relation, 1e-10);
  }
}

TEST(Chart, SingularWhenLowerCornerVanishes) {
  CMatrix u(2, 2);
  u << 1.0, 1.0, 0.0, 2.0;
  EXPECT_EQ(code_of([&] { gz_forward(u); }), ErrorCode::SingularChart);
}

TEST(Chart, TrackedFollowsReferenceOrder) {
  const OrbitPoint pt = sample_orbit(eigenvalues({1, 2, 3}), 7);
  const GZChart ref = gz_forward(pt);
  const GZChart again = gz_forward_tracked(pt.u, ref, {}, 1e-8);
  const auto a = flatten(ref), b = flatten(again);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-12);
}

TEST(Chart, CoordinateLabels) {
  const auto coords = chart_coordinates(3);
  ASSERT_EQ(coords.size(), 9u);
  EXPECT_EQ(coords.front().label(), "gamma[1,1]");
  EXPECT_EQ(coords.back().kind, 't');
  EXPECT_EQ(coords.back().level, 2);
}

TEST(KirillovKostant, GeneratorBrackets) {
  const OrbitPoint pt = sample_orbit(eigenvalues({1, 2, 3}), 7);
  auto entry = [](int i, int j) { return [i, j](const CMatrix& m) { return m(i, j); }; };
  const cplx b = kk_bracket(entry(0, 1), entry(1, 0), pt.u);
  EXPECT_NEAR(std::abs(b - (pt.u(0, 0) - pt.u(1, 1))), 0.0, 1e-8);
  const cplx c = kk_bracket(entry(0, 1), entry(1, 2), pt.u);
  EXPECT_NEAR(std::abs(c - pt.u(0, 2)), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(kk_bracket(entry(0, 0), entry(0, 0), pt.u)), 0.0, 1e-12);
}

TEST(KirillovKostant, TraceIsCasimir) {
  const OrbitPoint pt = sample_orbit(eigenvalues({1, 2, 3}), 7);
  auto trace = [](const CMatrix& m) { return m.trace(); };
  auto corner = [](const CMatrix& m) { return m(2, 0) * m(0, 1); };
  EXPECT_NEAR(std::abs(kk_bracket(trace, corner, pt.u)), 0.0, 1e-8);
}

TEST(CanonicalChart, DefaultConventionN2AndN3) {
  for (auto [s, seed] : {std::pair{eigenvalues({1, 2}), 3}, std::pair{eigenvalues({1, 2, 3}), 7}}) {
    const OrbitPoint pt = sample_orbit(s, seed);
    const CanonicalChartReport r = verify_canonical_chart(pt.u);
    EXPECT_TRUE(r.ok) << r.witness << " defect " << r.max_defect;
    EXPECT_LT(r.max_defect, 1e-5);
  }
}

TEST(CanonicalChart, SignImmaterialTransposeFails) {
  const OrbitPoint pt = sample_orbit(eigenvalues({1, 2, 3}), 7);
  for (const auto& r : sweep_chart_conventions(pt.u)) {
    if (r.convention.transposed) {
      EXPECT_FALSE(r.ok) << r.convention.name();
    } else {
      EXPECT_TRUE(r.ok) << r.convention.name() << ": " << r.witness;
    }
  }
}

TEST(CanonicalChart, SeveralSeeds) {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    const OrbitPoint pt = sample_orbit(eigenvalues({-1.0, 0.5, 2.0}), seed);
    EXPECT_TRUE(verify_canonical_chart(pt.u).ok) << "seed " << seed;
  }
}
