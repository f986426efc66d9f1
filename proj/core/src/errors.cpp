#include "omm/errors.hpp"

namespace omm {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::WrongShape: return "WrongShape";
    case ErrorCode::NonPositiveFrequency: return "NonPositiveFrequency";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SameMode: return "SameMode";
    case ErrorCode::ComplexEta: return "ComplexEta";
    case ErrorCode::NonPhysicalInput: return "NonPhysicalInput";
    case ErrorCode::NonPositiveDeterminant: return "NonPositiveDeterminant";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace omm
