#include "eulerlab/errors.hpp"

namespace eulerlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime:
      return "NotPrime";
    case ErrorCode::AlphaOutOfRange:
      return "AlphaOutOfRange";
    case ErrorCode::ZeroDirection:
      return "ZeroDirection";
    case ErrorCode::UnknownName:
      return "UnknownName";
    case ErrorCode::DomainViolation:
      return "DomainViolation";
    case ErrorCode::PoleHit:
      return "PoleHit";
    case ErrorCode::Syntax:
      return "SyntaxError";
    case ErrorCode::NotADistribution:
      return "NotADistribution";
    case ErrorCode::BudgetExhausted:
      return "BudgetExhausted";
    case ErrorCode::SignedMeasure:
      return "SignedMeasure";
    case ErrorCode::EmptyBatch:
      return "EmptyBatch";
    case ErrorCode::TruncationCap:
      return "TruncationCap";
    case ErrorCode::InvalidArgument:
      return "InvalidArgument";
  }
  return "Error";
}

}  // namespace eulerlab
