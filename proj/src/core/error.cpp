#include "error.hpp"

namespace milnor {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::ZeroPolynomial: return "zero_polynomial";
    case ErrorCode::PointOnZeroSet: return "point_on_zero_set";
    case ErrorCode::HypothesisViolation: return "hypothesis_violation";
    case ErrorCode::NotProportional: return "not_proportional";
    case ErrorCode::Numeric: return "numeric_failure";
    case ErrorCode::UnknownSuite: return "unknown_suite";
  }
  return "unknown";
}

}  // namespace milnor
