#pragma once

// Hamiltonian flows u̇ = [∇h_{nk}(u), u] of the Gelfand-Zetlin actions.

#include <string>
#include <vector>

#include "gztower/tower.hpp"

namespace gztower {

struct HamiltonianSelector {
  int n = 1;
  int k = 1;

  std::string label() const;
};

/// h_{nk}(u): coefficient of λ^{n−k} in det(λ − u)_n.
cplx hamiltonian_value(const CMatrix& u, HamiltonianSelector sel);

/// ∇h_{nk} with (∇h)_{ij} = ∂h/∂u_{ji}; equals −M_k of the leading n×n block
/// (Faddeev-LeVerrier adjugate coefficient), zero outside it.
CMatrix hamiltonian_gradient(const CMatrix& u, HamiltonianSelector sel);

struct FlowOptions {
  int steps = 1000;
  /// Keep every record_every-th state (the last state is always kept).
  int record_every = 1;
  double min_gap = 1e-6;
};

struct Trajectory {
  HamiltonianSelector hamiltonian;
  std::vector<double> t;
  std::vector<CMatrix> u;
};

/// Classical RK4 with step t_final/steps. After each step the state must stay
/// regular with a nonsingular chart, otherwise RegularityLost is thrown
/// with the time of the first offending state.
Trajectory hamiltonian_flow(const CMatrix& u0, HamiltonianSelector sel, double t_final,
                            const FlowOptions& options = {});

struct ConservationReport {
  double spectrum_drift = 0.0;
  /// max over samples and all h_{ml}, m ≤ N.
  double invariant_drift = 0.0;
  std::string worst_invariant;
};

ConservationReport conservation(const Trajectory& traj);

struct AngleSample {
  double t = 0.0;
  TowerDescriptor tower;
  bool deflected = false;
};

/// Towers along the trajectory, each tracked from the previous sample.
/// Throws BranchJump if some τ changes by more than π between samples.
std::vector<AngleSample> trace_angles(const Trajectory& traj, const TowerOptions& options = {});

struct LinearizationReport {
  HamiltonianSelector hamiltonian;
  double t_final = 0.0;
  int samples = 0;
  std::vector<std::string> labels;
  std::vector<cplx> slopes;
  std::vector<double> expected;
  double max_defect = 0.0;
  bool ok = false;
};

/// Complex least-squares slopes of every τ_{ml}(t) along the h_{nk} flow,
/// compared with δ_{nm}δ_{kl}.
LinearizationReport linearization_check(const CMatrix& u0, HamiltonianSelector sel, double t_final = 0.1,
                                        int steps = 1000, double tolerance = 1e-3,
                                        const TowerOptions& options = {});

LinearizationReport linearization_from_angles(const std::vector<AngleSample>& samples, HamiltonianSelector sel,
                                              double tolerance = 1e-3);

}  // namespace gztower
