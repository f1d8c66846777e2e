#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fesenko {

/// Machine-readable failure codes carried by every thrown Error.
enum class ErrorCode {
  nonprime,
  invalid_parameter,
  context_mismatch,
  support_violation,
  identity_input,
  out_of_horizon,
  size_guard,
  precondition,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by make_t when a coefficient sits at an exponent e with e != 1 mod q.
class SupportViolation : public Error {
 public:
  explicit SupportViolation(int exponent);

  int exponent() const noexcept { return exponent_; }

 private:
  int exponent_;
};

}  // namespace fesenko
