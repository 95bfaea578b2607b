#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dicode {

enum class ErrorCode {
  NonSymmetricCovariance,
  NotPositiveDefinite,
  SingularTransform,
  NonPositivePower,
  DimensionMismatch,
  NumericalFailure,
  InvalidAlpha,
  OutOfRange,
  ExponentTooSmall,
  NonPositiveExponent,
  NonPositiveRadius,
  EpsOutOfRange,
  Infeasible,
  HypothesisViolated,
  SizeCapExceeded,
  BudgetZero,
  InsufficientCodebook,
  QuadratureNonConvergence,
  SeriesNonConvergence,
  InvalidParameter,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message names the violated condition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& detail);

}  // namespace dicode
