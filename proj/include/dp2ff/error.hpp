#pragma once

#include <stdexcept>
#include <string>

namespace dp2ff {

enum class ErrorCode {
  InvalidPrime,
  NegativeValuation,
  DivisionByZero,
  ModulusMismatch,
  PoleAtZero,
  DegreeOverflow,
  NoExactZero,
  NonIntegralParameter,
  InfiniteInitial,
  UndefinedCase,
  ZeroTauDenominator,
  NoPeriodFound,
  ParseError,
  InvalidArgument,
};

/// Stable machine-readable name, e.g. "NEGATIVE_VALUATION".
const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dp2ff
