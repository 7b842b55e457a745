#include "pinv/error.hpp"

namespace pinv {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::InternalContradiction: return "InternalContradiction";
    case ErrorCode::CertificateFailure: return "CertificateFailure";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::MissingVariable: return "MissingVariable";
    case ErrorCode::UnknownVariable: return "UnknownVariable";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::MissingWitness: return "MissingWitness";
    case ErrorCode::CaseMismatch: return "CaseMismatch";
    case ErrorCode::VanishingDenominator: return "VanishingDenominator";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::BadIndices: return "BadIndices";
    case ErrorCode::ZeroDiagonal: return "ZeroDiagonal";
    case ErrorCode::SupportLeak: return "SupportLeak";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::WrongSupport: return "WrongSupport";
    case ErrorCode::NotYPoint: return "NotYPoint";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::ReductionFailure: return "ReductionFailure";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace pinv
