#include "revcomp/error.hpp"

namespace revcomp {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotZeroOne: return "NotZeroOne";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::IncompleteTable: return "IncompleteTable";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::UnknownState: return "UnknownState";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::GroundMismatch: return "GroundMismatch";
    case ErrorCode::LogicTooLarge: return "LogicTooLarge";
    case ErrorCode::InvalidSchedule: return "InvalidSchedule";
    case ErrorCode::InvalidProgram: return "InvalidProgram";
    case ErrorCode::InvalidEncoding: return "InvalidEncoding";
    case ErrorCode::UnknownDecider: return "UnknownDecider";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace revcomp
