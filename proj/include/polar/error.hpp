#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace polar {

enum class ErrorCode {
  NegativeShare,
  EmptyDistribution,
  PositionOffGrid,
  OutOfScale,
  InvertedInterval,
  EmptyGroup,
  InvalidScale,
  CenterOnBoundary,
  ScaleMismatch,
  CenterMismatch,
  ZeroBaseline,
  NonMonotoneG,
  InvalidArgument,
  InsufficientInteriorMass,
  DegenerateAlpha,
  MalformedHeader,
  NonNumericCell,
  AmbiguousTotal,
  UnknownSelector,
  IoFailure,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NegativeShare: return "NegativeShare";
    case ErrorCode::EmptyDistribution: return "EmptyDistribution";
    case ErrorCode::PositionOffGrid: return "PositionOffGrid";
    case ErrorCode::OutOfScale: return "OutOfScale";
    case ErrorCode::InvertedInterval: return "InvertedInterval";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::InvalidScale: return "InvalidScale";
    case ErrorCode::CenterOnBoundary: return "CenterOnBoundary";
    case ErrorCode::ScaleMismatch: return "ScaleMismatch";
    case ErrorCode::CenterMismatch: return "CenterMismatch";
    case ErrorCode::ZeroBaseline: return "ZeroBaseline";
    case ErrorCode::NonMonotoneG: return "NonMonotoneG";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InsufficientInteriorMass: return "InsufficientInteriorMass";
    case ErrorCode::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::AmbiguousTotal: return "AmbiguousTotal";
    case ErrorCode::UnknownSelector: return "UnknownSelector";
    case ErrorCode::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a code,
/// so callers (the CLI in particular) can branch on the kind of failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace polar
