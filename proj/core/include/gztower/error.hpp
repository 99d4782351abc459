#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gztower {

enum class ErrorCode {
  InvalidArgument,
  MismatchedAmbientSize,
  DegenerateGroupElement,
  NonFinite,
  RetryExhausted,
  SingularChart,
  TrackingAmbiguous,
  SquareFreeViolation,
  PathThroughPuncture,
  RegularityLost,
  BranchJump,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Thrown by hamiltonian_flow; carries the first time at which the
/// trajectory left the regular locus.
class RegularityLost : public Error {
 public:
  RegularityLost(double time, const std::string& what)
      : Error(ErrorCode::RegularityLost, what), time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::MismatchedAmbientSize: return "MISMATCHED_AMBIENT_SIZE";
    case ErrorCode::DegenerateGroupElement: return "DEGENERATE_GROUP_ELEMENT";
    case ErrorCode::NonFinite: return "NON_FINITE";
    case ErrorCode::RetryExhausted: return "RETRY_EXHAUSTED";
    case ErrorCode::SingularChart: return "SINGULAR_CHART";
    case ErrorCode::TrackingAmbiguous: return "TRACKING_AMBIGUOUS";
    case ErrorCode::SquareFreeViolation: return "SQUARE_FREE_VIOLATION";
    case ErrorCode::PathThroughPuncture: return "PATH_THROUGH_PUNCTURE";
    case ErrorCode::RegularityLost: return "REGULARITY_LOST";
    case ErrorCode::BranchJump: return "BRANCH_JUMP";
  }
  return "UNKNOWN";
}

}  // namespace gztower
