#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bfto {

enum class ErrorCode {
  DuplicatePoint,
  SinglePoint,
  NotABijection,
  ParseError,
  OverlappingBlocks,
  BudgetExceeded,
  OutOfRange,
  BadParameters,
  WrongMovSize,
  NotInImage,
  Overflow,
  InconsistentOracle,
  CodomainViolation,
  PreconditionFail,
};

std::string_view to_string(ErrorCode code);

// Domain error raised by every module. The code is stable; the message is
// for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bfto
