#include "psc/error.hpp"

namespace psc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotAFraction: return "NotAFraction";
    case ErrorCode::IntegerExponent: return "IntegerExponent";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidR: return "InvalidR";
    case ErrorCode::NonPositiveRho: return "NonPositiveRho";
    case ErrorCode::NoCrossing: return "NoCrossing";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::RangeTooLarge: return "RangeTooLarge";
    case ErrorCode::FactorizationTimeout: return "FactorizationTimeout";
  }
  return "Unknown";
}

bool is_resource_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::Overflow:
    case ErrorCode::PrecisionExhausted:
    case ErrorCode::RangeTooLarge:
    case ErrorCode::FactorizationTimeout:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace psc
