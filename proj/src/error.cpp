#include "qhg/error.hpp"

namespace qhg {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateNode: return "DuplicateNode";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::EmptySide: return "EmptySide";
    case ErrorCode::OverlappingSides: return "OverlappingSides";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::TooManyRequested: return "TooManyRequested";
    case ErrorCode::ConstraintViolation: return "ConstraintViolation";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::WitnessNotFound: return "WitnessNotFound";
    case ErrorCode::RankDeficientMass: return "RankDeficientMass";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSymmetric:
    case ErrorCode::NoConvergence:
    case ErrorCode::WitnessNotFound:
    case ErrorCode::RankDeficientMass:
      return true;
    default:
      return false;
  }
}

}  // namespace qhg
