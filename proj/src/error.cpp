#include "vnspec/error.hpp"

namespace vnspec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonSquareGenerator: return "NonSquareGenerator";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::TraceInvalid: return "TraceInvalid";
    case ErrorCode::TraceNotFaithful: return "TraceNotFaithful";
    case ErrorCode::AutomorphismInvalid: return "AutomorphismInvalid";
    case ErrorCode::SubsystemInvalid: return "SubsystemInvalid";
    case ErrorCode::PartitionInvalid: return "PartitionInvalid";
    case ErrorCode::NotMeanZero: return "NotMeanZero";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::SpecInvalid: return "SpecInvalid";
    case ErrorCode::WeightsNotPreserved: return "WeightsNotPreserved";
    case ErrorCode::ConstraintViolated: return "ConstraintViolated";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::CommutantMismatch: return "CommutantMismatch";
    case ErrorCode::ExtensionInconsistent: return "ExtensionInconsistent";
    case ErrorCode::StateNotPositive: return "StateNotPositive";
    case ErrorCode::IsometryViolation: return "IsometryViolation";
    case ErrorCode::VerdictMismatch: return "VerdictMismatch";
    case ErrorCode::DecompositionFailed: return "DecompositionFailed";
  }
  return "Unknown";
}

bool is_numerical_breakdown(ErrorCode code) {
  switch (code) {
    case ErrorCode::CommutantMismatch:
    case ErrorCode::ExtensionInconsistent:
    case ErrorCode::StateNotPositive:
    case ErrorCode::IsometryViolation:
    case ErrorCode::VerdictMismatch:
    case ErrorCode::DecompositionFailed:
      return true;
    default:
      return false;
  }
}

}  // namespace vnspec
