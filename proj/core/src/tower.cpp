#include "gztower/tower.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gztower/error.hpp"

namespace gztower {

std::vector<cplx> ResidueTable::column_sums() const {
  const std::size_t n = gamma.size();
  std::vector<cplx> sums(n, cplx{});
  for (const auto& row : r) {
    for (std::size_t k = 0; k < n; ++k) sums[k] += row[k];
  }
  return sums;
}

cplx ResidueTable::antiderivative(int k, cplx lambda) const {
  cplx total{};
  for (std::size_t j = 0; j < gamma.size(); ++j) {
    total += r[j][static_cast<std::size_t>(k - 1)] * std::log(lambda - gamma[j]);
  }
  return total;
}

ResidueTable differentials(const std::vector<cplx>& gamma, double min_gap) {
  if (gamma.size() > 1 && min_pairwise_distance(gamma) < min_gap) {
    throw Error(ErrorCode::SquareFreeViolation, "A_n has a repeated root");
  }
  ResidueTable t;
  t.gamma = gamma;
  const std::size_t n = gamma.size();
  for (std::size_t j = 0; j < n; ++j) {
    cplx dA(1.0, 0.0);
    for (std::size_t s = 0; s < n; ++s) {
      if (s != j) dA *= gamma[j] - gamma[s];
    }
    std::vector<cplx> row(n);
    cplx power(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = power / dA;
      power *= gamma[j];
    }
    t.r.push_back(std::move(row));
  }
  return t;
}

std::vector<std::vector<Rational>> differentials_exact(const std::vector<Rational>& gamma) {
  const std::size_t n = gamma.size();
  std::vector<std::vector<Rational>> r;
  for (std::size_t j = 0; j < n; ++j) {
    Rational dA = 1;
    for (std::size_t s = 0; s < n; ++s) {
      if (s != j) dA *= gamma[j] - gamma[s];
    }
    if (dA == 0) throw Error(ErrorCode::SquareFreeViolation, "A_n has a repeated root");
    std::vector<Rational> row(n);
    Rational power = 1;
    for (std::size_t k = 0; k < n; ++k) {
      row[k] = power / dA;
      power *= gamma[j];
    }
    r.push_back(std::move(row));
  }
  return r;
}

PathLog path_log(cplx a, cplx b, cplx p) {
  if (std::abs(a - p) < kEndpointClearance || std::abs(b - p) < kEndpointClearance) {
    throw Error(ErrorCode::PathThroughPuncture, "path endpoint sits on a puncture");
  }
  const cplx principal = std::log((b - p) / (a - p));
  const cplx d = b - a;
  const double len2 = std::norm(d);
  const double s = len2 > 0.0 ? std::clamp(std::real((p - a) * std::conj(d)) / len2, 0.0, 1.0) : 0.0;
  const double dist = std::abs(a + s * d - p);
  if (dist >= kDeflectionRadius) return {principal, false};

  // Imag part of cross(d, p − a) > 0 means p is already on the left of travel.
  const double side = std::imag(std::conj(d) * (p - a));
  const bool fits = std::abs(a - p) > kDeflectionRadius && std::abs(b - p) > kDeflectionRadius;
  if (!fits) {
    if (std::abs(principal.imag()) > std::numbers::pi - 1e-12) {
      throw Error(ErrorCode::PathThroughPuncture, "path runs through a puncture with no room to deflect");
    }
    return {principal, false};
  }
  if (side > 0.0) return {principal, false};
  cplx v = principal;
  if (v.imag() <= 0.0) v += cplx(0.0, 2.0 * std::numbers::pi);
  return {v, true};
}

std::string to_string(AngleConvention c) { return c == AngleConvention::Literal ? "literal" : "augmented"; }

void compute_angles(TowerLevel& level, const std::vector<cplx>& lower_gamma, AngleConvention convention,
                    const TowerLevel* reference) {
  const int n = level.n;
  const std::size_t np = level.gamma.size();
  level.branches.clear();
  level.tau.assign(static_cast<std::size_t>(n), cplx{});
  level.jacobian.assign(np, cplx(1.0, 0.0));

  std::size_t term = 0;
  auto log_term = [&](char kind, int endpoint, cplx z, std::size_t j) {
    PathLog pl = path_log(level.base_point, z, level.gamma[j]);
    if (reference != nullptr) pl.value = unwrap_2pi_i(pl.value, reference->branches[term].value);
    level.branches.push_back({kind, endpoint, static_cast<int>(j), pl.value, pl.deflected});
    ++term;
    return pl.value;
  };

  // Per puncture j: Σ_i log-integral to e_i minus Σ_i log-integral to γ_{n−1,i}.
  std::vector<cplx> divisor_logs(np, cplx{});
  for (std::size_t j = 0; j < np; ++j) {
    for (std::size_t i = 0; i < level.e.size(); ++i) {
      divisor_logs[j] += log_term('e', static_cast<int>(i), level.e[i], j);
      level.jacobian[j] *= (level.e[i] - level.gamma[j]);
    }
    for (std::size_t i = 0; i < lower_gamma.size(); ++i) {
      divisor_logs[j] -= log_term('g', static_cast<int>(i), lower_gamma[i], j);
      level.jacobian[j] /= (lower_gamma[i] - level.gamma[j]);
    }
  }
  for (int k = 1; k <= n; ++k) {
    const auto column = static_cast<std::size_t>(n - k);
    for (std::size_t j = 0; j < np; ++j) level.tau[static_cast<std::size_t>(k - 1)] += level.residues.r[j][column] * divisor_logs[j];
  }
  if (convention == AngleConvention::Augmented) {
    cplx lead = std::log(level.c_lead);
    if (reference != nullptr) lead = unwrap_2pi_i(lead, reference->branches[term].value);
    level.branches.push_back({'c', 0, 0, lead, false});
    level.tau[0] += lead;
  }
}

namespace {

void fill_zero_section(TowerLevel& level, const std::vector<cplx>& lower_gamma) {
  level.zero_section.assign(level.gamma.size(), cplx{});
  for (std::size_t k = 1; k <= level.gamma.size(); ++k) {
    level.zero_section[k - 1] = abel_map(level.residues, static_cast<int>(k), lower_gamma, {}, level.base_point);
  }
}

TowerLevel make_level(const CMatrix& u, int m, const TowerOptions& options) {
  const int n = static_cast<int>(u.rows());
  TowerLevel level;
  level.n = m;
  level.base_point = options.base_point;
  level.h = characteristic_polynomial(u.topLeftCorner(m, m)).coeffs;
  level.gamma = polynomial_roots(principal_minor(u, m));
  if (m < n) {
    const ComplexPoly c = lowering_minor(u, m, options.chart);
    level.e = polynomial_roots(c);
    level.c_lead = c.leading();
  }
  return level;
}

void finish_level(TowerLevel& level, const std::vector<cplx>& lower_gamma, int n, const TowerOptions& options,
                  const TowerLevel* reference) {
  level.residues = differentials(level.gamma);
  if (min_cross_distance(level.e, level.gamma) < kEndpointClearance) {
    throw Error(ErrorCode::PathThroughPuncture, "a zero of the lowering minor sits on a puncture");
  }
  fill_zero_section(level, lower_gamma);
  if (level.n < n) {
    compute_angles(level, lower_gamma, options.convention, reference);
  }
}

}  // namespace

TowerDescriptor build_tower(const CMatrix& u, const TowerOptions& options) {
  const int n = static_cast<int>(u.rows());
  TowerDescriptor tower;
  tower.n = n;
  tower.options = options;
  std::vector<cplx> lower;
  for (int m = 1; m <= n; ++m) {
    TowerLevel level = make_level(u, m, options);
    finish_level(level, lower, n, options, nullptr);
    lower = level.gamma;
    tower.levels.push_back(std::move(level));
  }
  return tower;
}

TowerDescriptor build_tower_tracked(const CMatrix& u, const TowerDescriptor& reference, double min_separation) {
  const int n = static_cast<int>(u.rows());
  if (reference.n != n) throw Error(ErrorCode::MismatchedAmbientSize, "reference tower size differs");
  TowerDescriptor tower;
  tower.n = n;
  tower.options = reference.options;
  std::vector<cplx> lower;
  for (int m = 1; m <= n; ++m) {
    const TowerLevel& ref = reference.levels[static_cast<std::size_t>(m - 1)];
    TowerLevel level = make_level(u, m, reference.options);
    for (auto* pts : {&level.gamma, &level.e}) {
      if (pts->size() > 1 && min_pairwise_distance(*pts) < min_separation) {
        throw Error(ErrorCode::TrackingAmbiguous, "level " + std::to_string(m) + " points collide");
      }
    }
    level.gamma = match_to_reference(ref.gamma, level.gamma);
    level.e = match_to_reference(ref.e, level.e);
    if (level.gamma.size() != ref.gamma.size() || level.e.size() != ref.e.size()) {
      throw Error(ErrorCode::TrackingAmbiguous, "level " + std::to_string(m) + " matching is not a bijection");
    }
    finish_level(level, lower, n, reference.options, &ref);
    lower = level.gamma;
    tower.levels.push_back(std::move(level));
  }
  return tower;
}

cplx abel_map(const ResidueTable& table, int k, const std::vector<cplx>& plus, const std::vector<cplx>& minus,
              cplx base_point) {
  cplx total{};
  for (std::size_t j = 0; j < table.gamma.size(); ++j) {
    cplx logs{};
    for (cplx z : plus) logs += path_log(base_point, z, table.gamma[j]).value;
    for (cplx z : minus) logs -= path_log(base_point, z, table.gamma[j]).value;
    total += table.r[j][static_cast<std::size_t>(k - 1)] * logs;
  }
  return total;
}

std::vector<cplx> action_angle_values(const TowerDescriptor& tower) {
  std::vector<cplx> out;
  for (const auto& level : tower.levels) out.insert(out.end(), level.h.begin() + 1, level.h.end());
  for (const auto& level : tower.levels) out.insert(out.end(), level.tau.begin(), level.tau.end());
  return out;
}

std::vector<std::string> action_angle_labels(int n) {
  std::vector<std::string> out;
  for (const char* name : {"h", "tau"}) {
    const int top = std::string(name) == "h" ? n : n - 1;
    for (int m = 1; m <= top; ++m) {
      for (int k = 1; k <= m; ++k) out.push_back(std::string(name) + "[" + std::to_string(m) + "," + std::to_string(k) + "]");
    }
  }
  return out;
}

PairingReport verify_action_angle(const CMatrix& u, AngleConvention convention, int min_level, double tolerance,
                                  double step, const TowerOptions& options) {
  const int n = static_cast<int>(u.rows());
  TowerOptions opts = options;
  opts.convention = convention;
  const TowerDescriptor base = build_tower(u, opts);
  const auto grads = lie_poisson_gradients(
      [&](const CMatrix& m) { return action_angle_values(build_tower_tracked(m, base, 10.0 * step)); }, u, step);

  // Offsets into the flattened value list.
  std::vector<std::pair<int, int>> selected;
  std::vector<std::size_t> h_index, tau_index;
  std::size_t h_offset = 0;
  std::size_t tau_offset = 0;
  for (int m = 1; m <= n; ++m) tau_offset += static_cast<std::size_t>(m);
  for (int m = 1; m < n; ++m) {
    for (int k = 1; k <= m; ++k) {
      if (m >= min_level) {
        selected.emplace_back(m, k);
        h_index.push_back(h_offset);
        tau_index.push_back(tau_offset);
      }
      ++h_offset;
      ++tau_offset;
    }
  }

  PairingReport report;
  report.convention = convention;
  report.min_level = min_level;
  const auto count = static_cast<Eigen::Index>(selected.size());
  report.pairing = CMatrix::Zero(count, count);
  report.hh = CMatrix::Zero(count, count);
  for (const auto& [m, k] : selected) report.labels.push_back("[" + std::to_string(m) + "," + std::to_string(k) + "]");
  for (Eigen::Index a = 0; a < count; ++a) {
    for (Eigen::Index b = 0; b < count; ++b) {
      const auto ia = static_cast<std::size_t>(a);
      const auto ib = static_cast<std::size_t>(b);
      report.pairing(a, b) = kk_bracket_from_gradients(u, grads[h_index[ia]], grads[tau_index[ib]]);
      report.hh(a, b) = kk_bracket_from_gradients(u, grads[h_index[ia]], grads[h_index[ib]]);
      const double expected = a == b ? 1.0 : 0.0;
      const double defect = std::max(std::abs(report.pairing(a, b) - expected), std::abs(report.hh(a, b)));
      if (defect > report.max_defect) {
        report.max_defect = defect;
        std::ostringstream os;
        os << "{h" << report.labels[ia] << ", tau" << report.labels[ib] << "} = " << report.pairing(a, b)
           << ", {h" << report.labels[ia] << ", h" << report.labels[ib] << "} = " << report.hh(a, b);
        report.witness = os.str();
      }
    }
  }
  report.ok = count > 0 && report.max_defect <= tolerance;
  return report;
}

}  // namespace gztower
