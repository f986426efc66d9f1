#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace omm {

enum class ErrorCode {
  NotStable,
  SingularSystem,
  NumericalFailure,
  NotSymmetric,
  OddDimension,
  WrongShape,
  NonPositiveFrequency,
  InvalidParameter,
  NoConvergence,
  SameMode,
  ComplexEta,
  NonPhysicalInput,
  NonPositiveDeterminant,
  ConfigError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace omm
