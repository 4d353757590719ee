#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bergsharp {

enum class ErrorCode {
  InvalidArgument,
  InvalidExponent,
  NonConvergent,
  TruncationFail,
  FormMismatch,
  Violation,
  Unbounded,
  RootFailure,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying one of the toolkit error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::InvalidExponent: return "INVALID_EXPONENT";
    case ErrorCode::NonConvergent: return "NON_CONVERGENT";
    case ErrorCode::TruncationFail: return "TRUNCATION_FAIL";
    case ErrorCode::FormMismatch: return "FORM_MISMATCH";
    case ErrorCode::Violation: return "VIOLATION";
    case ErrorCode::Unbounded: return "UNBOUNDED";
    case ErrorCode::RootFailure: return "ROOT_FAILURE";
  }
  return "UNKNOWN";
}

}  // namespace bergsharp
