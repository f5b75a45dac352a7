#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qc {

enum class ErrorCode {
  OddOrderNoMinusI,
  UnknownSpec,
  RelationSearchExhausted,
  NotRepresentable,
  EmptyActiveSet,
  InactiveMode,
  ImaginaryResidue,
  DimensionUnsupported,
  BallExceedsTruncation,
  TooLarge,
  NonFiniteState,
  NoBracket,
  NeverEnters,
  UnknownKey,
  BadValue,
  FormatVersionMismatch,
  CorruptPayload,
  ManifestMismatch,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the integrators when a coefficient becomes NaN or infinite.
class NonFiniteStateError : public Error {
 public:
  NonFiniteStateError(double t, const std::string& what)
      : Error(ErrorCode::NonFiniteState, what), time_(t) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace qc
