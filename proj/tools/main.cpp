// gztower: verification batteries for the Gelfand-Zetlin structure.
//
//   gztower verify-classical --n 3 --family gz
//   gztower verify-quantum --n 2
//   gztower orbit --n 3 --spectrum 1,2,3 --seed 7 --check all
//   gztower flow --n 3 --hamiltonian 1,1 --t 0.1 --trajectory out.jsonl
//
// The JSON report goes to --output, else to $GZ_TOWER_OUTPUT_DIR/<command>.json,
// else to stdout. A one-line-per-check summary goes to stderr.
// Exit status: 0 all checks pass, 1 a check failed, 2 bad configuration.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "gztower/error.hpp"

namespace {

using gztower::cli::Outcome;
using gztower::cli::RunConfig;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::optional<std::filesystem::path> output_dir() {
  const char* dir = std::getenv("GZ_TOWER_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir);
}

void emit(const RunConfig& config, const gztower::json& report) {
  const std::string text = report.dump(2) + "\n";
  if (!config.output) {
    std::cout << text;
    return;
  }
  std::ofstream file(*config.output);
  if (!file) {
    std::cerr << "cannot write report to " << *config.output << "\n";
    std::cout << text;
    return;
  }
  file << text;
}

void add_common(CLI::App* cmd, RunConfig& config, std::vector<std::string>& tolerances) {
  cmd->add_option("--n", config.n, "Ambient size N")->capture_default_str();
  cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
  cmd->add_option("--tol", tolerances, "Tolerance override name=value (repeatable)");
  cmd->add_option("--output", config.output, "Report path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gelfand-Zetlin integrable structure: exact and numerical verification"};
  app.require_subcommand(1);
  RunConfig config;
  std::vector<std::string> tolerances;

  auto* classical = app.add_subcommand("verify-classical", "Exact Poisson commutativity of a minor family");
  add_common(classical, config, tolerances);
  classical->add_option("--family", config.family, "gz | corner | mf | trivial")->capture_default_str();
  classical->add_option("--side", config.side, "left | right | both")->capture_default_str();
  classical->add_option("--shift-matrix", config.shift_matrix, "random-rational or N*N comma-separated rationals")
      ->capture_default_str();
  classical->add_option("--rank-points", config.rank_points, "Random points for the rank check")
      ->capture_default_str();

  auto* quantum = app.add_subcommand("verify-quantum", "Centrality and commutativity of quantum determinants");
  add_common(quantum, config, tolerances);
  quantum->add_flag("--allow-large", config.allow_large, "Permit N >= 4");

  auto* orbit = app.add_subcommand("orbit", "Chart, tower and canonicity checks on a sampled orbit point");
  add_common(orbit, config, tolerances);
  orbit->add_option("--spectrum", config.spectrum, "Comma-separated eigenvalues, e.g. 1,2,3 or 1+2i,0.5");
  orbit->add_option("--check", config.check, "canonical | residue-form | action-angle | all")->capture_default_str();
  orbit->add_option("--pairs", config.pairs, "Tangent pairs for the residue form")->capture_default_str();

  auto* flow = app.add_subcommand("flow", "Integrate a Gelfand-Zetlin Hamiltonian flow");
  add_common(flow, config, tolerances);
  flow->add_option("--spectrum", config.spectrum, "Comma-separated eigenvalues");
  flow->add_option("--hamiltonian", config.hamiltonian, "Selector n,k")->capture_default_str();
  flow->add_option("--t", config.t_final, "Final time")->capture_default_str();
  flow->add_option("--steps", config.steps, "RK4 steps")->capture_default_str();
  flow->add_option("--record-every", config.record_every, "Keep every k-th state")->capture_default_str();
  flow->add_option("--trajectory", config.trajectory, "JSON-lines trajectory path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (const auto dir = output_dir()) {
    if (!config.output) config.output = (*dir / (config.command + ".json")).string();
    if (config.command == "flow" && !config.trajectory) config.trajectory = (*dir / "trajectory.jsonl").string();
  }

  gztower::json report = {{"schema", "gz-tower/1"}, {"timestamp", utc_timestamp()}};
  Outcome outcome;
  try {
    for (const auto& item : tolerances) {
      const auto eq = item.find('=');
      std::size_t used = 0;
      double value = 0.0;
      try {
        if (eq != std::string::npos) value = std::stod(item.substr(eq + 1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (eq == std::string::npos || used != item.size() - eq - 1 || !(value > 0.0)) {
        throw gztower::Error(gztower::ErrorCode::InvalidArgument, "--tol expects name=positive-value, got " + item);
      }
      const std::string name = item.substr(0, eq);
      if (!gztower::cli::default_tolerances().count(name)) {
        throw gztower::Error(gztower::ErrorCode::InvalidArgument, "unknown tolerance '" + name + "'");
      }
      config.tolerances[name] = value;
    }
    report["config"] = gztower::cli::resolved_config(config);
    if (config.command == "verify-classical") {
      outcome = gztower::cli::cmd_verify_classical(config);
    } else if (config.command == "verify-quantum") {
      outcome = gztower::cli::cmd_verify_quantum(config);
    } else if (config.command == "orbit") {
      outcome = gztower::cli::cmd_orbit(config);
    } else {
      outcome = gztower::cli::cmd_flow(config);
    }
  } catch (const gztower::Error& e) {
    const bool config_error =
        e.code() == gztower::ErrorCode::InvalidArgument || e.code() == gztower::ErrorCode::MismatchedAmbientSize;
    outcome.exit_code = config_error ? 2 : 1;
    outcome.result = {{"status", "error"}, {"error", {{"code", std::string(gztower::to_string(e.code()))}, {"message", e.what()}}}};
    outcome.summary.push_back(std::string(config_error ? "ERROR " : "FAIL ") + e.what());
  }
  if (!report.contains("config")) report["config"] = gztower::cli::resolved_config(config);
  report["result"] = outcome.result;
  report["exit_code"] = outcome.exit_code;

  emit(config, report);
  std::cerr << config.command << ":\n";
  for (const auto& s : outcome.summary) std::cerr << "  " << s << "\n";
  return outcome.exit_code;
}
