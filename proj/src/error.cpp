#include "homspec/error.hpp"

namespace homspec {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InadmissibleDimension: return "InadmissibleDimension";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::OddIndexOnRealProjective: return "OddIndexOnRealProjective";
    case ErrorCode::NonFiniteEntry: return "NonFiniteEntry";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::QuadratureTooCoarse: return "QuadratureTooCoarse";
    case ErrorCode::InsufficientCoefficients: return "InsufficientCoefficients";
    case ErrorCode::NonFiniteKernelValue: return "NonFiniteKernelValue";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NonPositiveValuesInWindow: return "NonPositiveValuesInWindow";
    case ErrorCode::WindowTooSmall: return "WindowTooSmall";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::SequenceTooShort: return "SequenceTooShort";
    case ErrorCode::OrderTooLargeForGeneralCase: return "OrderTooLargeForGeneralCase";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace homspec
