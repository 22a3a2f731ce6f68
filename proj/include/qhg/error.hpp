#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhg {

enum class ErrorCode {
  // input validation
  DuplicateNode,
  UnknownNode,
  EmptySide,
  OverlappingSides,
  ParseError,
  InvalidArgument,
  NotSquare,
  DimensionMismatch,
  NegativeTime,
  GridTooCoarse,
  TooManyRequested,
  ConstraintViolation,
  // numerical failures
  NotSymmetric,
  NoConvergence,
  WitnessNotFound,
  RankDeficientMass,
};

std::string_view to_string(ErrorCode code) noexcept;

// True for codes that signal a failed computation rather than bad input.
bool is_numerical(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qhg
