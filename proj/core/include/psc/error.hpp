#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psc {

enum class ErrorCode {
  NotAFraction,
  IntegerExponent,
  OutOfRange,
  InvalidArgument,
  InvalidR,
  NonPositiveRho,
  NoCrossing,
  Overflow,
  PrecisionExhausted,
  RangeTooLarge,
  FactorizationTimeout,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by hitting a configured resource cap, as opposed to
// malformed input.
bool is_resource_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace psc
