#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lpkdv {

enum class ErrorCode {
  InvalidParams,
  SingularQuad,
  InvalidSpec,
  Degenerate,
  OutOfWindow,
  DivergentDenominator,
  InvalidW,
  RatioNotConstant,
  WindowTooSmall,
  NoDecay,
  PoleAtQ,
  NegativePQSum,
  ZeroDifference,
  SingularStep,
  NewtonFailure,
  Overflow,
};

/// Upper snake case name, used verbatim in CLI error lines.
std::string_view code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace lpkdv
