#include "dnkg/error.hpp"

namespace dnkg {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config: return "ConfigError";
    case ErrorCode::NonConfining: return "NonConfining";
    case ErrorCode::OutOfBox: return "OutOfBox";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::Divergence: return "Divergence";
    case ErrorCode::SingularSplit: return "SingularSplit";
    case ErrorCode::RatioMismatch: return "RatioMismatch";
    case ErrorCode::OnSpectrum: return "OnSpectrum";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::DegenerateLinear: return "DegenerateLinear";
    case ErrorCode::DegenerateFrequencies: return "DegenerateFrequencies";
    case ErrorCode::PotentialDesignFailure: return "PotentialDesignFailure";
    case ErrorCode::OnExcludedPoints: return "OnExcludedPoints";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::WindowTooShort: return "WindowTooShort";
    case ErrorCode::NoPeak: return "NoPeak";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

bool Error::is_numerical() const noexcept {
  return code_ != ErrorCode::Config && code_ != ErrorCode::Io &&
         code_ != ErrorCode::DimensionError;
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dnkg
