#include "bfto/error.hpp"

namespace bfto {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicatePoint: return "DuplicatePoint";
    case ErrorCode::SinglePoint: return "SinglePoint";
    case ErrorCode::NotABijection: return "NotABijection";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::OverlappingBlocks: return "OverlappingBlocks";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::WrongMovSize: return "WrongMovSize";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InconsistentOracle: return "InconsistentOracle";
    case ErrorCode::CodomainViolation: return "CodomainViolation";
    case ErrorCode::PreconditionFail: return "PreconditionFail";
  }
  return "Unknown";
}

}  // namespace bfto
