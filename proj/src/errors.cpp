#include "dicode/errors.hpp"

namespace dicode {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSymmetricCovariance: return "NonSymmetricCovariance";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::NonPositivePower: return "NonPositivePower";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::InvalidAlpha: return "InvalidAlpha";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ExponentTooSmall: return "ExponentTooSmall";
    case ErrorCode::NonPositiveExponent: return "NonPositiveExponent";
    case ErrorCode::NonPositiveRadius: return "NonPositiveRadius";
    case ErrorCode::EpsOutOfRange: return "EpsOutOfRange";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorCode::BudgetZero: return "BudgetZero";
    case ErrorCode::InsufficientCodebook: return "InsufficientCodebook";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::SeriesNonConvergence: return "SeriesNonConvergence";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

void raise(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace dicode
