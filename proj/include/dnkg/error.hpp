#pragma once

#include <stdexcept>
#include <string>

namespace dnkg {

enum class ErrorCode {
  Config,
  NonConfining,
  OutOfBox,
  NoBracket,
  Divergence,
  SingularSplit,
  RatioMismatch,
  OnSpectrum,
  NoConvergence,
  DomainError,
  DimensionError,
  NoRoot,
  NoSolution,
  DegenerateLinear,
  DegenerateFrequencies,
  PotentialDesignFailure,
  OnExcludedPoints,
  HypothesisViolation,
  WindowTooShort,
  NoPeak,
  Io,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }
  // Config and I/O problems are the caller's fault; everything else is numerical.
  bool is_numerical() const noexcept;

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace dnkg
