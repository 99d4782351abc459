#include <gtest/gtest.h>

#include "gztower/error.hpp"
#include "gztower/flow.hpp"

using namespace gztower;

namespace {

OrbitPoint point3() { return sample_orbit({cplx(1.0), cplx(2.0), cplx(3.0)}, 7); }

}  // namespace

TEST(Hamiltonian, ValueAndGradient) {
  const CMatrix u = point3().u;
  EXPECT_NEAR(std::abs(hamiltonian_value(u, {1, 1}) + u(0, 0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hamiltonian_value(u, {3, 1}) + u.trace()), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(hamiltonian_value(u, {2, 2}) - u.topLeftCorner(2, 2).determinant()), 0.0, 1e-12);
  for (HamiltonianSelector sel : {HamiltonianSelector{2, 1}, HamiltonianSelector{2, 2}, HamiltonianSelector{3, 2}}) {
    const CMatrix fd = lie_poisson_gradient([sel](const CMatrix& m) { return hamiltonian_value(m, sel); }, u);
    EXPECT_NEAR((fd - hamiltonian_gradient(u, sel)).norm(), 0.0, 1e-7) << sel.label();
  }
}

TEST(Hamiltonian, SelectorRange) {
  const CMatrix u = point3().u;
  EXPECT_THROW(hamiltonian_value(u, {4, 1}), Error);
  EXPECT_THROW(hamiltonian_value(u, {2, 3}), Error);
  EXPECT_THROW(hamiltonian_value(u, {2, 0}), Error);
  EXPECT_THROW(hamiltonian_flow(u, {1, 1}, 0.1, FlowOptions{0, 1, 1e-6}), Error);
}

TEST(Flow, CasimirFlowIsStationary) {
  const CMatrix u = point3().u;
  const Trajectory traj = hamiltonian_flow(u, {3, 2}, 1.0, FlowOptions{100, 10, 1e-6});
  EXPECT_EQ(traj.u.size(), 11u);
  EXPECT_NEAR((traj.u.back() - u).norm(), 0.0, 1e-10);
}

TEST(Flow, ConservesSpectrumAndActions) {
  const CMatrix u = point3().u;
  for (HamiltonianSelector sel : {HamiltonianSelector{1, 1}, HamiltonianSelector{2, 1}, HamiltonianSelector{2, 2}}) {
    const Trajectory traj = hamiltonian_flow(u, sel, 0.5, FlowOptions{500, 5, 1e-6});
    const ConservationReport r = conservation(traj);
    EXPECT_LT(r.spectrum_drift, 1e-8) << sel.label();
    EXPECT_LT(r.invariant_drift, 1e-8) << sel.label() << " worst " << r.worst_invariant;
    EXPECT_GT((traj.u.back() - u).norm(), 1e-3) << sel.label();
  }
}

TEST(Flow, AnglesLinearize) {
  const CMatrix u = point3().u;
  for (HamiltonianSelector sel : {HamiltonianSelector{1, 1}, HamiltonianSelector{2, 1}, HamiltonianSelector{2, 2}}) {
    const LinearizationReport r = linearization_check(u, sel);
    EXPECT_TRUE(r.ok) << sel.label() << " defect " << r.max_defect;
    EXPECT_EQ(r.labels.size(), 3u);
  }
}

TEST(Flow, TooFewSamplesRejected) {
  const CMatrix u = point3().u;
  const Trajectory traj = hamiltonian_flow(u, {1, 1}, 0.1, FlowOptions{10, 1, 1e-6});
  EXPECT_THROW(linearization_from_angles(trace_angles(traj), {1, 1}), Error);
}

TEST(Flow, ChartDegenerationLosesRegularity) {
  // The h[1,1] flow scales u21 by e^t; far enough back the chart at level 1 collapses.
  const OrbitPoint pt = sample_orbit({cplx(1.0), cplx(2.0)}, 3);
  try {
    hamiltonian_flow(pt.u, {1, 1}, -40.0);
    FAIL() << "expected RegularityLost";
  } catch (const RegularityLost& e) {
    EXPECT_EQ(e.code(), ErrorCode::RegularityLost);
    EXPECT_LT(e.time(), -20.0);
    EXPECT_GE(e.time(), -40.0);
  }
}
