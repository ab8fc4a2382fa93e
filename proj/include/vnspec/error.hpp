#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vnspec {

enum class ErrorCode {
  // validation / input errors
  NonSquareGenerator,
  DimensionMismatch,
  InvalidTolerance,
  NotFinite,
  TraceInvalid,
  TraceNotFaithful,
  AutomorphismInvalid,
  SubsystemInvalid,
  PartitionInvalid,
  NotMeanZero,
  NotCommutative,
  NotAutomorphism,
  SpecInvalid,
  WeightsNotPreserved,
  ConstraintViolated,
  NotUnitary,
  ParseError,
  ValidationError,
  // numerical breakdown
  CommutantMismatch,
  ExtensionInconsistent,
  StateNotPositive,
  IsometryViolation,
  VerdictMismatch,
  DecompositionFailed,
};

std::string_view to_string(ErrorCode code);

/// True for the codes that signal a numerical breakdown of an identity the
/// theory guarantees, as opposed to bad input.
bool is_numerical_breakdown(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vnspec
