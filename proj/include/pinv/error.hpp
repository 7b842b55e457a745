#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pinv {

enum class ErrorCode {
  EmptyInput,
  NonPositive,
  InternalContradiction,
  CertificateFailure,
  UnsupportedFormat,
  NotSquare,
  SizeCap,
  MissingVariable,
  UnknownVariable,
  NotAdmissible,
  MissingWitness,
  CaseMismatch,
  VanishingDenominator,
  DegenerateInput,
  BadIndices,
  ZeroDiagonal,
  SupportLeak,
  ZeroCoefficient,
  WrongSupport,
  NotYPoint,
  DivisionByZero,
  MissingValue,
  ReductionFailure,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type; `code()` identifies
// the failure class and `what()` names the offending root or coordinate.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pinv
