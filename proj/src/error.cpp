#include "lpkdv/error.hpp"

namespace lpkdv {

std::string_view code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParams: return "INVALID_PARAMS";
    case ErrorCode::SingularQuad: return "SINGULAR_QUAD";
    case ErrorCode::InvalidSpec: return "INVALID_SPEC";
    case ErrorCode::Degenerate: return "DEGENERATE";
    case ErrorCode::OutOfWindow: return "OUT_OF_WINDOW";
    case ErrorCode::DivergentDenominator: return "DIVERGENT_DENOMINATOR";
    case ErrorCode::InvalidW: return "INVALID_W";
    case ErrorCode::RatioNotConstant: return "RATIO_NOT_CONSTANT";
    case ErrorCode::WindowTooSmall: return "WINDOW_TOO_SMALL";
    case ErrorCode::NoDecay: return "NO_DECAY";
    case ErrorCode::PoleAtQ: return "POLE_AT_Q";
    case ErrorCode::NegativePQSum: return "NEGATIVE_PQ_SUM";
    case ErrorCode::ZeroDifference: return "ZERO_DIFFERENCE";
    case ErrorCode::SingularStep: return "SINGULAR_STEP";
    case ErrorCode::NewtonFailure: return "NEWTON_FAILURE";
    case ErrorCode::Overflow: return "OVERFLOW";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(std::string(code_name(code)) + ": " + detail),
      code_(code),
      detail_(std::move(detail)) {}

}  // namespace lpkdv
