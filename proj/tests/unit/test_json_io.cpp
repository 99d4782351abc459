#include <gtest/gtest.h>

#include <random>

#include "gztower/canonical.hpp"
#include "gztower/error.hpp"
#include "gztower/flow.hpp"
#include "gztower/json_io.hpp"

using namespace gztower;

TEST(Json, ComplexAndMatrixRoundTrip) {
  EXPECT_EQ(complex_from_json(as_json(cplx(1.5, -2.0))), cplx(1.5, -2.0));
  EXPECT_EQ(complex_from_json(json(3.0)), cplx(3.0, 0.0));
  std::mt19937_64 rng(1);
  const CMatrix m = random_complex_matrix(3, 3, rng);
  // Text round trip: nlohmann prints doubles with round-trip precision.
  const json parsed = json::parse(as_json(m).dump());
  EXPECT_EQ((matrix_from_json(parsed, 3) - m).norm(), 0.0);
  EXPECT_THROW(matrix_from_json(parsed, 2), Error);
  EXPECT_THROW(complex_from_json(json::array({1.0})), Error);
}

TEST(Json, CanonicalPointRoundTrip) {
  std::mt19937_64 rng(2);
  const CanonicalPoint pt = random_canonical_point(2, rng);
  const CanonicalPoint back = canonical_point_from_json(json::parse(as_json(pt).dump()));
  EXPECT_EQ((back.g() - pt.g()).norm(), 0.0);
  EXPECT_EQ((back.p() - pt.p()).norm(), 0.0);
}

TEST(Json, OrbitPointRoundTrip) {
  const OrbitPoint pt = sample_orbit({cplx(1.0), cplx(2.0), cplx(3.0)}, 7);
  const OrbitPoint back = orbit_point_from_json(json::parse(as_json(pt).dump()));
  EXPECT_EQ((back.u - pt.u).norm(), 0.0);
  EXPECT_EQ(back.spectrum, pt.spectrum);
  json broken = as_json(pt);
  broken["spectrum"].erase(0);
  EXPECT_THROW(orbit_point_from_json(broken), Error);
}

TEST(Json, TrajectoryRecordShape) {
  const OrbitPoint pt = sample_orbit({cplx(1.0), cplx(2.0), cplx(3.0)}, 7);
  AngleSample s;
  s.t = 0.25;
  s.tower = build_tower(pt.u);
  const json rec = trajectory_record(pt.u, s);
  EXPECT_EQ(rec.at("t").get<double>(), 0.25);
  EXPECT_EQ(rec.at("u").size(), 9u);
  EXPECT_EQ(rec.at("h").size(), 3u);
  EXPECT_EQ(rec.at("h")[2].size(), 3u);
  EXPECT_EQ(rec.at("tau").size(), 2u);
  EXPECT_EQ(rec.at("branch_flags").size(), 3u);
}

TEST(Json, ReportsSerialize) {
  const OrbitPoint pt = sample_orbit({cplx(1.0), cplx(2.0)}, 3);
  const json chart = as_json(verify_canonical_chart(pt.u));
  EXPECT_EQ(chart.at("status"), "ok");
  const json tower = as_json(build_tower(pt.u));
  EXPECT_EQ(tower.at("levels").size(), 2u);
}
