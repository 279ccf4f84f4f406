#pragma once

#include <stdexcept>
#include <string>

namespace milnor {

enum class ErrorCode {
  Parse,
  InvalidArgument,
  DimensionMismatch,
  ZeroPolynomial,
  PointOnZeroSet,
  HypothesisViolation,
  NotProportional,
  Numeric,
  UnknownSuite,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string reason = {})
      : std::runtime_error(message), code_(code), reason_(std::move(reason)) {}

  ErrorCode code() const noexcept { return code_; }
  // Machine-readable reason, e.g. "point_on_K_f". Empty when the code says it all.
  const std::string& reason() const noexcept { return reason_; }

 private:
  ErrorCode code_;
  std::string reason_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(ErrorCode::Parse, message + " at position " + std::to_string(position), "syntax"),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace milnor
