#pragma once

#include <stdexcept>
#include <string>

namespace quatfact {

enum class ErrorCode {
  ZeroDivisor,
  DidNotConverge,
  OddRealRoot,
  NonMonicDivisor,
  NotRankOne,
  NonRealResidue,
  DivisibleByM,
  ZeroRemainder,
  ConjugatePair,
  NFCViolated,
  DegenerateRemainder,
  DifferentPolynomials,
  StateBudgetExceeded,
  MismatchedPolynomials,
  InvalidArgument,
  ParseError,
  ResidualTooLarge,
};

const char* to_string(ErrorCode code) noexcept;

/// All failures raised by the library carry one of the codes above; the C
/// API maps them one-to-one onto status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Relative tolerance threaded through every numerical decision. One knob;
/// individual operations scale it as documented at their declaration.
struct Tolerance {
  double eps = 1e-9;
};

}  // namespace quatfact
