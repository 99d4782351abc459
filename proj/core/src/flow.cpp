#include "gztower/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gztower/error.hpp"

namespace gztower {

namespace {

void check_selector(const CMatrix& u, HamiltonianSelector sel) {
  if (sel.n < 1 || sel.n > u.rows() || sel.k < 1 || sel.k > sel.n) {
    throw Error(ErrorCode::InvalidArgument, "hamiltonian selector " + sel.label() + " out of range");
  }
}

bool regular_state(const CMatrix& u, double min_gap) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      if (!std::isfinite(u(i, j).real()) || !std::isfinite(u(i, j).imag())) return false;
    }
  }
  if (!is_regular(u, min_gap)) return false;
  try {
    gz_forward(u);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularChart) return false;
    throw;
  }
  return true;
}

}  // namespace

std::string HamiltonianSelector::label() const {
  return "h[" + std::to_string(n) + "," + std::to_string(k) + "]";
}

cplx hamiltonian_value(const CMatrix& u, HamiltonianSelector sel) {
  check_selector(u, sel);
  return characteristic_polynomial(u.topLeftCorner(sel.n, sel.n)).coeffs[static_cast<std::size_t>(sel.k)];
}

CMatrix hamiltonian_gradient(const CMatrix& u, HamiltonianSelector sel) {
  check_selector(u, sel);
  const CharPoly cp = characteristic_polynomial(u.topLeftCorner(sel.n, sel.n));
  CMatrix grad = CMatrix::Zero(u.rows(), u.cols());
  grad.topLeftCorner(sel.n, sel.n) = -cp.adj[static_cast<std::size_t>(sel.k - 1)];
  return grad;
}

Trajectory hamiltonian_flow(const CMatrix& u0, HamiltonianSelector sel, double t_final, const FlowOptions& options) {
  check_selector(u0, sel);
  if (options.steps < 1 || options.record_every < 1) {
    throw Error(ErrorCode::InvalidArgument, "steps and record_every must be positive");
  }
  if (!std::isfinite(t_final)) throw Error(ErrorCode::InvalidArgument, "t_final must be finite");

  auto rhs = [sel](const CMatrix& u) {
    const CMatrix b = hamiltonian_gradient(u, sel);
    return CMatrix(b * u - u * b);
  };

  Trajectory traj;
  traj.hamiltonian = sel;
  traj.t.push_back(0.0);
  traj.u.push_back(u0);
  const double dt = t_final / options.steps;
  CMatrix u = u0;
  for (int s = 1; s <= options.steps; ++s) {
    const CMatrix k1 = rhs(u);
    const CMatrix k2 = rhs(u + 0.5 * dt * k1);
    const CMatrix k3 = rhs(u + 0.5 * dt * k2);
    const CMatrix k4 = rhs(u + dt * k3);
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double t = s * dt;
    if (!regular_state(u, options.min_gap)) {
      throw RegularityLost(t, "flow of " + sel.label() + " left the regular locus at t = " + std::to_string(t));
    }
    if (s % options.record_every == 0 || s == options.steps) {
      traj.t.push_back(t);
      traj.u.push_back(u);
    }
  }
  return traj;
}

ConservationReport conservation(const Trajectory& traj) {
  ConservationReport report;
  if (traj.u.empty()) return report;
  const CMatrix& u0 = traj.u.front();
  const int n = static_cast<int>(u0.rows());
  const std::vector<cplx> spectrum0 = polynomial_roots(principal_minor(u0, n));
  std::vector<std::vector<cplx>> h0;
  for (int m = 1; m <= n; ++m) h0.push_back(characteristic_polynomial(u0.topLeftCorner(m, m)).coeffs);

  for (const CMatrix& u : traj.u) {
    const std::vector<cplx> spectrum = match_to_reference(spectrum0, polynomial_roots(principal_minor(u, n)));
    if (spectrum.empty()) {
      report.spectrum_drift = std::numeric_limits<double>::infinity();
    } else {
      for (std::size_t j = 0; j < spectrum.size(); ++j) {
        report.spectrum_drift = std::max(report.spectrum_drift, std::abs(spectrum[j] - spectrum0[j]));
      }
    }
    for (int m = 1; m <= n; ++m) {
      const auto h = characteristic_polynomial(u.topLeftCorner(m, m)).coeffs;
      for (int k = 1; k <= m; ++k) {
        const double d = std::abs(h[static_cast<std::size_t>(k)] - h0[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(k)]);
        if (d > report.invariant_drift) {
          report.invariant_drift = d;
          report.worst_invariant = HamiltonianSelector{m, k}.label();
        }
      }
    }
  }
  return report;
}

std::vector<AngleSample> trace_angles(const Trajectory& traj, const TowerOptions& options) {
  std::vector<AngleSample> out;
  for (std::size_t s = 0; s < traj.u.size(); ++s) {
    AngleSample sample;
    sample.t = traj.t[s];
    sample.tower = out.empty() ? build_tower(traj.u[s], options)
                               : build_tower_tracked(traj.u[s], out.back().tower, 1e-8);
    for (const auto& level : sample.tower.levels) {
      for (const auto& b : level.branches) sample.deflected = sample.deflected || b.deflected;
    }
    if (!out.empty()) {
      const auto& prev = out.back().tower;
      for (std::size_t m = 0; m < prev.levels.size(); ++m) {
        const auto& a = prev.levels[m].tau;
        const auto& b = sample.tower.levels[m].tau;
        for (std::size_t k = 0; k < a.size(); ++k) {
          if (std::abs(b[k] - a[k]) > std::numbers::pi) {
            throw Error(ErrorCode::BranchJump, "tau[" + std::to_string(m + 1) + "," + std::to_string(k + 1) +
                                                   "] jumps at t = " + std::to_string(sample.t));
          }
        }
      }
    }
    out.push_back(std::move(sample));
  }
  return out;
}

LinearizationReport linearization_from_angles(const std::vector<AngleSample>& samples, HamiltonianSelector sel,
                                              double tolerance) {
  LinearizationReport report;
  report.hamiltonian = sel;
  report.samples = static_cast<int>(samples.size());
  if (samples.size() < 20) throw Error(ErrorCode::InvalidArgument, "slope estimation needs at least 20 samples");
  report.t_final = samples.back().t;

  double t_mean = 0.0;
  for (const auto& s : samples) t_mean += s.t;
  t_mean /= static_cast<double>(samples.size());
  double t_var = 0.0;
  for (const auto& s : samples) t_var += (s.t - t_mean) * (s.t - t_mean);

  const auto& levels = samples.front().tower.levels;
  for (std::size_t m = 0; m < levels.size(); ++m) {
    for (std::size_t k = 0; k < levels[m].tau.size(); ++k) {
      cplx tau_mean{};
      for (const auto& s : samples) tau_mean += s.tower.levels[m].tau[k];
      tau_mean /= static_cast<double>(samples.size());
      cplx cov{};
      for (const auto& s : samples) cov += (s.t - t_mean) * (s.tower.levels[m].tau[k] - tau_mean);
      const cplx slope = cov / t_var;
      const int level = static_cast<int>(m) + 1;
      const int index = static_cast<int>(k) + 1;
      const double expected = (level == sel.n && index == sel.k) ? 1.0 : 0.0;
      report.labels.push_back("tau[" + std::to_string(level) + "," + std::to_string(index) + "]");
      report.slopes.push_back(slope);
      report.expected.push_back(expected);
      report.max_defect = std::max(report.max_defect, std::abs(slope - expected));
    }
  }
  report.ok = report.max_defect <= tolerance;
  return report;
}

LinearizationReport linearization_check(const CMatrix& u0, HamiltonianSelector sel, double t_final, int steps,
                                        double tolerance, const TowerOptions& options) {
  FlowOptions flow;
  flow.steps = steps;
  const Trajectory traj = hamiltonian_flow(u0, sel, t_final, flow);
  return linearization_from_angles(trace_angles(traj, options), sel, tolerance);
}

}  // namespace gztower
