#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace revcomp {

enum class ErrorCode {
  // perm_core
  NotSquare,
  NotZeroOne,
  NotBijective,
  DegreeMismatch,
  DegreeTooLarge,
  // automaton
  IncompleteTable,
  NotInjective,
  UnknownState,
  UnknownSymbol,
  DimensionMismatch,
  // experiment logic
  InvalidPartition,
  GroundMismatch,
  LogicTooLarge,
  // zeno
  InvalidSchedule,
  InvalidProgram,
  InvalidEncoding,
  UnknownDecider,
  // qubit
  NotNormalized,
  NotUnitary,
  // text formats
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every domain failure in the library is reported through this type. The
// message is meant to be shown to users verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace revcomp
