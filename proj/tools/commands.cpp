#include "commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "gztower/classical.hpp"
#include "gztower/diffop.hpp"
#include "gztower/error.hpp"
#include "gztower/flow.hpp"
#include "gztower/quantum.hpp"

namespace gztower::cli {

namespace {

const char* status(bool ok) { return ok ? "ok" : "violation"; }

std::string line(const std::string& what, bool ok, const std::string& detail = {}) {
  return std::string(ok ? "PASS " : "FAIL ") + what + (detail.empty() ? "" : "  (" + detail + ")");
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double tol(const RunConfig& c, const std::string& name) {
  const auto it = c.tolerances.find(name);
  return it != c.tolerances.end() ? it->second : default_tolerances().at(name);
}

void require_size(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be at least 1");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  return out;
}

std::vector<cplx> resolve_spectrum(const RunConfig& c) {
  if (c.spectrum.empty()) {
    std::vector<cplx> s;
    for (int k = 1; k <= c.n; ++k) s.emplace_back(static_cast<double>(k), 0.0);
    return s;
  }
  std::vector<cplx> s = parse_spectrum(c.spectrum);
  if (s.size() != static_cast<std::size_t>(c.n)) {
    throw Error(ErrorCode::InvalidArgument, "--spectrum has " + std::to_string(s.size()) + " entries, --n is " +
                                                std::to_string(c.n));
  }
  return s;
}

FamilySpec family_spec(const RunConfig& c) {
  FamilySpec spec;
  spec.n = c.n;
  if (c.family == "gz") {
    spec.kind = FamilyKind::GzPrincipal;
  } else if (c.family == "corner") {
    spec.kind = FamilyKind::GzCorner;
  } else if (c.family == "mf") {
    spec.kind = FamilyKind::MfShift;
  } else if (c.family == "trivial") {
    spec.kind = FamilyKind::Trivial;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown family '" + c.family + "'");
  }
  if (c.side == "left") {
    spec.side = Side::Left;
  } else if (c.side == "right") {
    spec.side = Side::Right;
  } else if (c.side == "both") {
    spec.side = Side::Both;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown side '" + c.side + "'");
  }
  if (spec.kind == FamilyKind::MfShift) {
    if (c.shift_matrix == "random-rational") {
      std::mt19937_64 rng(c.seed);
      spec.shift_matrix = random_rational_matrix(c.n, rng);
    } else {
      std::vector<Rational> a;
      for (const auto& item : split(c.shift_matrix, ',')) {
        Rational q;
        if (q.set_str(item, 10) != 0) throw Error(ErrorCode::InvalidArgument, "bad shift-matrix entry '" + item + "'");
        q.canonicalize();
        a.push_back(q);
      }
      spec.shift_matrix = std::move(a);
    }
  }
  spec.validate();
  return spec;
}

HamiltonianSelector parse_selector(const std::string& text) {
  const auto parts = split(text, ',');
  try {
    if (parts.size() == 2) return {std::stoi(parts[0]), std::stoi(parts[1])};
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidArgument, "--hamiltonian expects n,k");
}

}  // namespace

std::map<std::string, double> default_tolerances() {
  return {{"trivial", 1e-5},      {"canonical", 1e-5}, {"residue_form", 1e-4}, {"action_angle", 1e-4},
          {"conservation", 1e-8}, {"linearization", 1e-3}};
}

json resolved_config(const RunConfig& c) {
  json tolerances = json::object();
  for (const auto& [name, value] : default_tolerances()) tolerances[name] = value;
  for (const auto& [name, value] : c.tolerances) tolerances[name] = value;
  json out = {{"command", c.command}, {"n", c.n}, {"seed", c.seed}, {"tolerances", tolerances}};
  if (c.command == "verify-classical") {
    out["family"] = c.family;
    out["side"] = c.side;
    if (c.family == "mf") out["shift_matrix"] = c.shift_matrix;
    out["rank_points"] = c.rank_points;
  } else if (c.command == "verify-quantum") {
    out["allow_large"] = c.allow_large;
  } else {
    std::string spectrum = c.spectrum;
    if (spectrum.empty()) {
      for (int k = 1; k <= c.n; ++k) spectrum += (k > 1 ? "," : "") + std::to_string(k);
    }
    out["spectrum"] = spectrum;
    if (c.command == "orbit") {
      out["check"] = c.check;
      out["pairs"] = c.pairs;
    } else {
      out["hamiltonian"] = c.hamiltonian;
      out["t"] = c.t_final;
      out["steps"] = c.steps;
      out["record_every"] = c.record_every;
      out["trajectory"] = c.trajectory ? json(*c.trajectory) : json(nullptr);
    }
  }
  out["output"] = c.output ? json(*c.output) : json(nullptr);
  return out;
}

std::vector<cplx> parse_spectrum(const std::string& text) {
  std::vector<cplx> out;
  for (const auto& raw : split(text, ',')) {
    std::string item;
    for (char ch : raw) {
      if (ch != ' ') item += ch;
    }
    if (item.empty()) throw Error(ErrorCode::InvalidArgument, "empty spectrum entry");
    const char* s = item.c_str();
    char* end = nullptr;
    double re = 0.0, im = 0.0;
    if (item.back() == 'i') {
      // a+bi, a-bi, bi, i, -i
      const std::string body = item.substr(0, item.size() - 1);
      std::size_t split_at = std::string::npos;
      for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
          split_at = k;
          break;
        }
      }
      std::string re_part = split_at == std::string::npos ? "" : body.substr(0, split_at);
      std::string im_part = split_at == std::string::npos ? body : body.substr(split_at);
      if (im_part.empty() || im_part == "+") im_part = "1";
      if (im_part == "-") im_part = "-1";
      if (!re_part.empty()) {
        re = std::strtod(re_part.c_str(), &end);
        if (*end != '\0') throw Error(ErrorCode::InvalidArgument, "bad spectrum entry '" + item + "'");
      }
      im = std::strtod(im_part.c_str(), &end);
      if (*end != '\0') throw Error(ErrorCode::InvalidArgument, "bad spectrum entry '" + item + "'");
    } else {
      re = std::strtod(s, &end);
      if (*end != '\0') throw Error(ErrorCode::InvalidArgument, "bad spectrum entry '" + item + "'");
    }
    if (!std::isfinite(re) || !std::isfinite(im)) throw Error(ErrorCode::InvalidArgument, "non-finite spectrum entry");
    out.emplace_back(re, im);
  }
  return out;
}

Outcome cmd_verify_classical(const RunConfig& c) {
  require_size(c.n);
  if (c.rank_points < 1) throw Error(ErrorCode::InvalidArgument, "--rank-points must be positive");
  const FamilySpec spec = family_spec(c);
  Outcome out;
  out.result["family"] = as_json(spec);
  bool ok = true;

  const CommutingFamily family = build_family(spec);
  out.result["generators"] = family.members.size();
  if (!family.numeric_only) {
    const CommuteReport commute = verify_commutes(family);
    out.result["commute"] = as_json(commute);
    ok = ok && commute.ok;
    out.summary.push_back(line("exact pairwise brackets vanish", commute.ok,
                               std::to_string(commute.pairs_checked) + " pairs"));

    // Rank N² is expected for the two-sided principal family only.
    const bool rank_expected = spec.kind == FamilyKind::GzPrincipal && spec.side == Side::Both;
    std::mt19937_64 rng(c.seed);
    json ranks = json::array();
    bool rank_ok = true;
    for (int k = 0; k < c.rank_points; ++k) {
      const int r = independence_rank(family, random_canonical_point(c.n, rng));
      ranks.push_back(r);
      rank_ok = rank_ok && r == c.n * c.n;
    }
    out.result["rank"] = {{"values", ranks}, {"expected", rank_expected ? json(c.n * c.n) : json(nullptr)}};
    if (rank_expected) {
      out.result["rank"]["status"] = status(rank_ok);
      ok = ok && rank_ok;
      out.summary.push_back(line("independence rank N^2", rank_ok));
    }
  }

  const TrivialReport trivial = verify_trivial_numeric(c.n, 10, c.seed, MatrixSide::UTilde, tol(c, "trivial"));
  out.result["trivial"] = as_json(trivial);
  ok = ok && trivial.ok;
  out.summary.push_back(line("trivial family commutes numerically", trivial.ok, "max " + fmt(trivial.max_abs_bracket)));

  out.result["status"] = status(ok);
  out.exit_code = ok ? 0 : 1;
  return out;
}

Outcome cmd_verify_quantum(const RunConfig& c) {
  require_size(c.n);
  if (c.n >= 4 && !c.allow_large) {
    throw Error(ErrorCode::InvalidArgument, "N = " + std::to_string(c.n) +
                                                " needs --allow-large; PBW rewriting of quantum determinants "
                                                "grows factorially and may take hours");
  }
  Outcome out;
  QuantumOptions opts;
  opts.allow_large = c.allow_large;
  const QuantumReport q = verify_quantum_commutes(c.n, opts);
  out.result["quantum"] = as_json(q);
  out.summary.push_back(line("quantum determinant centrality and family commutativity", q.ok,
                             q.validated ? "rho convention " + to_string(*q.validated) : "no convention validated"));
  const DiffOpReport d = diffop_realization_check(c.n, 3, c.seed);
  out.result["diffop"] = as_json(d);
  out.summary.push_back(line("left/right differentiation realization", d.ok));
  const bool ok = q.ok && d.ok;
  out.result["status"] = status(ok);
  out.exit_code = ok ? 0 : 1;
  return out;
}

Outcome cmd_orbit(const RunConfig& c) {
  require_size(c.n);
  const bool all = c.check == "all";
  if (!all && c.check != "canonical" && c.check != "residue-form" && c.check != "action-angle") {
    throw Error(ErrorCode::InvalidArgument, "unknown --check '" + c.check + "'");
  }
  if (c.pairs < 1) throw Error(ErrorCode::InvalidArgument, "--pairs must be positive");
  const std::vector<cplx> spectrum = resolve_spectrum(c);

  Outcome out;
  const OrbitPoint pt = sample_orbit(spectrum, c.seed);
  const GZChart chart = gz_forward(pt);
  out.result["point"] = as_json(pt);
  out.result["chart"] = as_json(chart);
  out.result["chart_residuals"] = as_json(chart_residuals(pt.u, chart));
  out.result["tower"] = as_json(build_tower(pt.u));
  bool ok = true;

  if (all || c.check == "canonical") {
    const CanonicalChartReport r = verify_canonical_chart(pt.u, {}, tol(c, "canonical"));
    out.result["canonical"] = as_json(r);
    json sweep = json::array();
    for (const auto& s : sweep_chart_conventions(pt.u, tol(c, "canonical"))) {
      sweep.push_back({{"convention", s.convention.name()}, {"max_defect", s.max_defect}, {"status", status(s.ok)}});
    }
    out.result["chart_convention_sweep"] = sweep;
    ok = ok && r.ok;
    out.summary.push_back(line("canonical (gamma, theta) bracket table", r.ok, "max defect " + fmt(r.max_defect)));
  }
  if (all || c.check == "residue-form") {
    const ResidueFormReport r =
        residue_form_check(pt.u, random_tangent_pairs(c.n, c.pairs, c.seed), tol(c, "residue_form"));
    out.result["residue_form"] = as_json(r);
    ok = ok && r.ok;
    std::string winners;
    for (const auto& w : r.winners) winners += (winners.empty() ? "" : "; ") + w;
    out.summary.push_back(line("residue form matches Kirillov-Kostant", r.ok,
                               winners.empty() ? "no convention matched" : winners));
  }
  if (all || c.check == "action-angle") {
    const PairingReport aug = verify_action_angle(pt.u, AngleConvention::Augmented, 1, tol(c, "action_angle"));
    const PairingReport lit = verify_action_angle(pt.u, AngleConvention::Literal, 1, tol(c, "action_angle"));
    out.result["action_angle"] = {{"augmented", as_json(aug)}, {"literal", as_json(lit)}};
    ok = ok && aug.ok;
    out.summary.push_back(line("action-angle pairing (augmented angles)", aug.ok, "max defect " + fmt(aug.max_defect)));
    out.summary.push_back(std::string("INFO literal angles ") + (lit.ok ? "also canonical" : "not canonical") +
                          ", max defect " + fmt(lit.max_defect));
  }

  out.result["status"] = status(ok);
  out.exit_code = ok ? 0 : 1;
  return out;
}

Outcome cmd_flow(const RunConfig& c) {
  require_size(c.n);
  const HamiltonianSelector sel = parse_selector(c.hamiltonian);
  if (sel.n < 1 || sel.n > c.n || sel.k < 1 || sel.k > sel.n) {
    throw Error(ErrorCode::InvalidArgument, "--hamiltonian " + c.hamiltonian + " out of range for N = " +
                                                std::to_string(c.n));
  }
  if (c.steps < 1 || c.record_every < 1) throw Error(ErrorCode::InvalidArgument, "--steps and --record-every must be positive");
  if ((c.steps + c.record_every - 1) / c.record_every + 1 < 20) {
    throw Error(ErrorCode::InvalidArgument, "slope fitting needs at least 20 recorded samples");
  }
  if (!std::isfinite(c.t_final)) throw Error(ErrorCode::InvalidArgument, "--t must be finite");
  const std::vector<cplx> spectrum = resolve_spectrum(c);

  Outcome out;
  const OrbitPoint pt = sample_orbit(spectrum, c.seed);
  out.result["initial_point"] = as_json(pt);
  out.result["hamiltonian"] = sel.label();

  FlowOptions flow;
  flow.steps = c.steps;
  flow.record_every = c.record_every;
  Trajectory traj;
  try {
    traj = hamiltonian_flow(pt.u, sel, c.t_final, flow);
  } catch (const RegularityLost& e) {
    out.result["regularity_lost"] = {{"time", e.time()}, {"message", e.what()}};
    out.result["status"] = "violation";
    out.summary.push_back(line("trajectory stays regular", false, "lost at t = " + fmt(e.time())));
    out.exit_code = 1;
    return out;
  }

  const ConservationReport cons = conservation(traj);
  const bool cons_ok = cons.spectrum_drift <= tol(c, "conservation") && cons.invariant_drift <= tol(c, "conservation");
  out.result["conservation"] = as_json(cons);
  out.result["conservation"]["status"] = status(cons_ok);
  out.summary.push_back(line("spectrum and family values conserved", cons_ok,
                             "drift " + fmt(std::max(cons.spectrum_drift, cons.invariant_drift))));

  const std::vector<AngleSample> angles = trace_angles(traj);
  const LinearizationReport lin = linearization_from_angles(angles, sel, tol(c, "linearization"));
  out.result["linearization"] = as_json(lin);
  out.summary.push_back(line("angles evolve linearly with unit conjugate slope", lin.ok,
                             "max defect " + fmt(lin.max_defect)));

  if (c.trajectory) {
    std::ofstream file(*c.trajectory);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open trajectory file " + *c.trajectory);
    for (std::size_t s = 0; s < angles.size(); ++s) file << trajectory_record(traj.u[s], angles[s]).dump() << '\n';
    out.result["trajectory_records"] = angles.size();
  }

  const bool ok = cons_ok && lin.ok;
  out.result["status"] = status(ok);
  out.exit_code = ok ? 0 : 1;
  return out;
}

}  // namespace gztower::cli
