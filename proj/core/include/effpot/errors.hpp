#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace effpot {

/// Machine-readable failure tags. The tag name is what ends up in error.json.
enum class ErrorCode {
  InvalidDimension,
  ZeroExtent,
  IndexOutOfRange,
  LengthMismatch,
  NonpositiveCoefficient,
  NegativePotential,
  EmptyIndexSet,
  DegeneratePotential,
  NoConvergence,
  NonpositiveLandscape,
  NegativeLevel,
  EmptySourceSet,
  OverlappingComponents,
  EmptyWellSet,
  KExceedsDof,
  EmptyOmega,
  StaleLandscape,
  InadmissibleTestFunction,
  HypothesisViolated,
  InvalidArgument,
  InsufficientData,
  AllZeroRealization,
  ConfigParse,
  Io,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view tag() const noexcept { return error_code_name(code_); }

 private:
  ErrorCode code_;
};

}  // namespace effpot
