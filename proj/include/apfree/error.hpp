#pragma once

#include <stdexcept>
#include <string>

namespace apfree {

enum class ErrorCode {
  InvalidArgument,
  InstanceTooLarge,
  DimensionTooLarge,
  WrongModulus,
  ModulusMismatch,
  DegenerateSpec,
  EmbeddedDataCorrupt,
  TimeBudgetExceeded,
  InfeasibleInstance,
  ConvergenceFailure,
  NotMultipleOfSix,
  WitnessMismatch,
  MonotonicityViolation,
  FormatError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::WrongModulus: return "WrongModulus";
    case ErrorCode::ModulusMismatch: return "ModulusMismatch";
    case ErrorCode::DegenerateSpec: return "DegenerateSpec";
    case ErrorCode::EmbeddedDataCorrupt: return "EmbeddedDataCorrupt";
    case ErrorCode::TimeBudgetExceeded: return "TimeBudgetExceeded";
    case ErrorCode::InfeasibleInstance: return "InfeasibleInstance";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::NotMultipleOfSix: return "NotMultipleOfSix";
    case ErrorCode::WitnessMismatch: return "WitnessMismatch";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::FormatError: return "FormatError";
  }
  return "Unknown";
}

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace apfree
