#include "fesenko/error.hpp"

namespace fesenko {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::nonprime: return "NONPRIME";
    case ErrorCode::invalid_parameter: return "INVALID_PARAMETER";
    case ErrorCode::context_mismatch: return "CONTEXT_MISMATCH";
    case ErrorCode::support_violation: return "SUPPORT_VIOLATION";
    case ErrorCode::identity_input: return "IDENTITY_INPUT";
    case ErrorCode::out_of_horizon: return "OUT_OF_HORIZON";
    case ErrorCode::size_guard: return "SIZE_GUARD";
    case ErrorCode::precondition: return "PRECONDITION";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

SupportViolation::SupportViolation(int exponent)
    : Error(ErrorCode::support_violation,
            "coefficient at exponent " + std::to_string(exponent) + " is outside the support of T"),
      exponent_(exponent) {}

}  // namespace fesenko
