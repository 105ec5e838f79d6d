#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hbe {

enum class ErrorCode {
  NotTrivial,
  NotPeriodic,
  WindowTooNarrow,
  NotUnitary,
  NotInteger,
  UnboundedExponents,
  WrongBase,
  NotPeriodicEnd,
  UnsupportedInvariant,
  NotInChart,
  NotInOverlap,
  GridTooCoarse,
  ToleranceExceeded,
  NotHermitianUnitary,
  OutOfDisc,
  WrongHemisphere,
  WindingUnstable,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotTrivial: return "NotTrivial";
    case ErrorCode::NotPeriodic: return "NotPeriodic";
    case ErrorCode::WindowTooNarrow: return "WindowTooNarrow";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::NotInteger: return "NotInteger";
    case ErrorCode::UnboundedExponents: return "UnboundedExponents";
    case ErrorCode::WrongBase: return "WrongBase";
    case ErrorCode::NotPeriodicEnd: return "NotPeriodicEnd";
    case ErrorCode::UnsupportedInvariant: return "UnsupportedInvariant";
    case ErrorCode::NotInChart: return "NotInChart";
    case ErrorCode::NotInOverlap: return "NotInOverlap";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::ToleranceExceeded: return "ToleranceExceeded";
    case ErrorCode::NotHermitianUnitary: return "NotHermitianUnitary";
    case ErrorCode::OutOfDisc: return "OutOfDisc";
    case ErrorCode::WrongHemisphere: return "WrongHemisphere";
    case ErrorCode::WindingUnstable: return "WindingUnstable";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Tolerance failures are reported separately from domain errors (the CLI
/// maps them to different exit codes).
constexpr bool is_tolerance_failure(ErrorCode code) {
  return code == ErrorCode::ToleranceExceeded ||
         code == ErrorCode::WindingUnstable;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hbe
