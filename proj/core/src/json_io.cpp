#include "gztower/json_io.hpp"

#include "gztower/error.hpp"

namespace gztower {

json as_json(cplx z) { return json::array({z.real(), z.imag()}); }

json as_json(const std::vector<cplx>& v) {
  json out = json::array();
  for (cplx z : v) out.push_back(as_json(z));
  return out;
}

json as_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(as_json(m(i, j)));
  }
  return out;
}

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidArgument, "complex value must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

CMatrix matrix_from_json(const json& j, int n) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "matrix must hold n*n entries");
  }
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) m(i, k) = complex_from_json(j[static_cast<std::size_t>(i * n + k)]);
  }
  return m;
}

json as_json(const CanonicalPoint& pt) { return {{"n", pt.n()}, {"g", as_json(pt.g())}, {"p", as_json(pt.p())}}; }

CanonicalPoint canonical_point_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  return CanonicalPoint(matrix_from_json(j.at("g"), n), matrix_from_json(j.at("p"), n));
}

json as_json(const OrbitPoint& pt) {
  return {{"n", pt.n()}, {"spectrum", as_json(pt.spectrum)}, {"u", as_json(pt.u)}};
}

OrbitPoint orbit_point_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  OrbitPoint pt;
  pt.u = matrix_from_json(j.at("u"), n);
  for (const auto& z : j.at("spectrum")) pt.spectrum.push_back(complex_from_json(z));
  if (pt.spectrum.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::InvalidArgument, "spectrum length differs from n");
  }
  return pt;
}

json as_json(const GZChart& chart) {
  json gamma = json::array();
  json theta = json::array();
  for (const auto& level : chart.gamma) gamma.push_back(as_json(level));
  for (const auto& level : chart.theta) theta.push_back(as_json(level));
  return {{"n", chart.n}, {"gamma", gamma}, {"theta", theta}};
}

json as_json(const ChartResiduals& r) { return {{"minor", r.minor}, {"c_relation", r.c_relation}}; }

json as_json(const RealizationCandidate& c) {
  return {{"u", c.u_formula},
          {"utilde", c.utilde_formula},
          {"max_defect", c.max_defect},
          {"satisfies_relations", c.satisfies_relations},
          {"conjugation_sign", c.conjugation_sign}};
}

json as_json(const FamilySpec& spec) {
  json out = {{"kind", to_string(spec.kind)}, {"n", spec.n}, {"side", to_string(spec.side)}};
  if (spec.shift_matrix) {
    json a = json::array();
    for (const Rational& q : *spec.shift_matrix) a.push_back(q.get_str());
    out["shift_matrix"] = a;
  }
  return out;
}

json as_json(const CommuteReport& r) {
  json out = {{"pairs", r.pairs_checked},
              {"max_nonzero_terms", r.max_nonzero_terms},
              {"status", r.ok ? "ok" : "violation"}};
  if (r.witness_pair) out["witness"] = {{"pair", *r.witness_pair}, {"terms", r.witness_terms.value_or("")}};
  return out;
}

json as_json(const TrivialReport& r) {
  return {{"n", r.n},
          {"points", r.points},
          {"side", r.side == MatrixSide::U ? "u" : "utilde"},
          {"max_abs_bracket", r.max_abs_bracket},
          {"tolerance", r.tolerance},
          {"status", r.ok ? "ok" : "violation"}};
}

json as_json(const QuantumReport& r) {
  json conventions = json::array();
  for (const auto& c : r.conventions) {
    json entry = {{"convention", to_string(c.convention)},
                  {"centrality", c.centrality_ok},
                  {"family", c.family_ok},
                  {"centrality_checks", c.centrality_checks},
                  {"pairs", c.pairs_checked}};
    if (c.witness) entry["witness"] = *c.witness;
    conventions.push_back(entry);
  }
  return {{"n", r.n},
          {"conventions", conventions},
          {"convention", r.validated ? json(to_string(*r.validated)) : json(nullptr)},
          {"status", r.ok ? "ok" : "violation"}};
}

json as_json(const DiffOpReport& r) {
  json out = {{"n", r.n},
              {"trials", r.trials},
              {"relations_checked", r.relations_checked},
              {"status", r.ok ? "ok" : "violation"}};
  if (!r.witness.empty()) out["witness"] = r.witness;
  return out;
}

json as_json(const CanonicalChartReport& r) {
  json labels = json::array();
  for (const auto& c : r.coordinates) labels.push_back(c.label());
  json rows = json::array();
  for (Eigen::Index a = 0; a < r.brackets.rows(); ++a) {
    json row = json::array();
    for (Eigen::Index b = 0; b < r.brackets.cols(); ++b) row.push_back(as_json(r.brackets(a, b)));
    rows.push_back(row);
  }
  json out = {{"convention", r.convention.name()},
              {"coordinates", labels},
              {"brackets", rows},
              {"max_defect", r.max_defect},
              {"status", r.ok ? "ok" : "violation"}};
  if (!r.witness.empty()) out["witness"] = r.witness;
  return out;
}

json as_json(const ResidueFormReport& r) {
  json conventions = json::array();
  for (const auto& c : r.conventions) {
    conventions.push_back(
        {{"name", c.name}, {"orientation", c.orientation}, {"max_defect", c.max_defect}, {"ok", c.ok}});
  }
  return {{"pairs", r.pairs},
          {"conventions", conventions},
          {"winners", r.winners},
          {"status", r.ok ? "ok" : "violation"}};
}

json as_json(const TowerLevel& level) {
  json branches = json::array();
  for (const auto& b : level.branches) {
    branches.push_back({{"endpoint", std::string(1, b.endpoint_kind) + std::to_string(b.endpoint + 1)},
                        {"puncture", b.puncture + 1},
                        {"value", as_json(b.value)},
                        {"deflected", b.deflected}});
  }
  json residues = json::array();
  for (const auto& row : level.residues.r) residues.push_back(as_json(row));
  return {{"n", level.n},
          {"gamma", as_json(level.gamma)},
          {"h", as_json(level.h)},
          {"e", as_json(level.e)},
          {"c_lead", as_json(level.c_lead)},
          {"tau", as_json(level.tau)},
          {"base_point", as_json(level.base_point)},
          {"residues", residues},
          {"jacobian", as_json(level.jacobian)},
          {"zero_section", as_json(level.zero_section)},
          {"branches", branches}};
}

json as_json(const TowerDescriptor& tower) {
  json levels = json::array();
  for (const auto& level : tower.levels) levels.push_back(as_json(level));
  return {{"n", tower.n},
          {"base_point", as_json(tower.options.base_point)},
          {"angle_convention", to_string(tower.options.convention)},
          {"chart_convention", tower.options.chart.name()},
          {"levels", levels}};
}

json as_json(const PairingReport& r) {
  auto table = [](const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index a = 0; a < m.rows(); ++a) {
      json row = json::array();
      for (Eigen::Index b = 0; b < m.cols(); ++b) row.push_back(as_json(m(a, b)));
      rows.push_back(row);
    }
    return rows;
  };
  json out = {{"convention", to_string(r.convention)},
              {"min_level", r.min_level},
              {"labels", r.labels},
              {"h_tau", table(r.pairing)},
              {"h_h", table(r.hh)},
              {"max_defect", r.max_defect},
              {"status", r.ok ? "ok" : "violation"}};
  if (!r.witness.empty()) out["witness"] = r.witness;
  return out;
}

json as_json(const ConservationReport& r) {
  return {{"spectrum_drift", r.spectrum_drift},
          {"invariant_drift", r.invariant_drift},
          {"worst_invariant", r.worst_invariant}};
}

json as_json(const LinearizationReport& r) {
  json slopes = json::array();
  for (std::size_t i = 0; i < r.labels.size(); ++i) {
    slopes.push_back({{"tau", r.labels[i]}, {"slope", as_json(r.slopes[i])}, {"expected", r.expected[i]}});
  }
  return {{"hamiltonian", r.hamiltonian.label()},
          {"t_final", r.t_final},
          {"samples", r.samples},
          {"slopes", slopes},
          {"max_defect", r.max_defect},
          {"status", r.ok ? "ok" : "violation"}};
}

json trajectory_record(const CMatrix& u, const AngleSample& sample) {
  json h = json::array();
  json tau = json::array();
  json flags = json::array();
  for (const auto& level : sample.tower.levels) {
    h.push_back(as_json(std::vector<cplx>(level.h.begin() + 1, level.h.end())));
    if (!level.tau.empty()) tau.push_back(as_json(level.tau));
    bool deflected = false;
    for (const auto& b : level.branches) deflected = deflected || b.deflected;
    flags.push_back(deflected);
  }
  return {{"t", sample.t}, {"u", as_json(u)}, {"h", h}, {"tau", tau}, {"branch_flags", flags}};
}

}  // namespace gztower
