#pragma once

// Subcommands of the gztower tool. Each returns an exit code (0 pass,
// 1 violation, 2 configuration error) and fills a JSON report.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gztower/json_io.hpp"

namespace gztower::cli {

struct RunConfig {
  std::string command;
  int n = 3;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
  std::string family = "gz";
  std::string side = "both";
  std::string shift_matrix = "random-rational";
  int rank_points = 5;
  bool allow_large = false;
  std::string spectrum;
  std::string check = "all";
  int pairs = 20;
  std::string hamiltonian = "1,1";
  double t_final = 0.1;
  int steps = 1000;
  int record_every = 1;
  std::optional<std::string> output;
  std::optional<std::string> trajectory;
};

/// Module defaults, overridden by --tol name=value.
std::map<std::string, double> default_tolerances();

/// Config with defaults resolved, as embedded in every report.
json resolved_config(const RunConfig& config);

struct Outcome {
  int exit_code = 0;
  json result;
  /// One line per check for standard error.
  std::vector<std::string> summary;
};

Outcome cmd_verify_classical(const RunConfig& config);
Outcome cmd_verify_quantum(const RunConfig& config);
Outcome cmd_orbit(const RunConfig& config);
Outcome cmd_flow(const RunConfig& config);

/// Parses "1,2.5,1+2i,-0.5i"; throws Error(InvalidArgument) on malformed input.
std::vector<cplx> parse_spectrum(const std::string& text);

}  // namespace gztower::cli
