#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace eulerlab {

enum class ErrorCode {
  NotPrime,
  AlphaOutOfRange,
  ZeroDirection,
  UnknownName,
  DomainViolation,
  PoleHit,
  Syntax,
  NotADistribution,
  BudgetExhausted,
  SignedMeasure,
  EmptyBatch,
  TruncationCap,
  InvalidArgument,
};

const char* to_string(ErrorCode code);

/// Library error carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 0-based byte position and the expected token class.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& expected)
      : Error(ErrorCode::Syntax, "position " + std::to_string(position) +
                                     ": expected " + expected),
        position_(position),
        expected_(expected) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  std::size_t position_;
  std::string expected_;
};

}  // namespace eulerlab
