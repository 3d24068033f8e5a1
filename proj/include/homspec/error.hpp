#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homspec {

enum class ErrorCode {
  InadmissibleDimension,
  Overflow,
  OddIndexOnRealProjective,
  NonFiniteEntry,
  NoConvergence,
  QuadratureTooCoarse,
  InsufficientCoefficients,
  NonFiniteKernelValue,
  LengthMismatch,
  NonPositiveValuesInWindow,
  WindowTooSmall,
  HypothesisViolation,
  SequenceTooShort,
  OrderTooLargeForGeneralCase,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace homspec
