#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padhyp {

enum class ErrorKind {
  InvalidConfig,
  InvalidParameter,
  DivisionByZero,
  PrecisionLoss,
  FlavorMismatch,
  TruncationOverflow,
  NotOverconvergentOnWindow,
  PreconditionViolated,
  HypothesisViolation,
  LiouvilleIndeterminate,
  IsInteger,
  HorizonTooSmall,
  IntegerAlpha,
  TailBoundTooWeak,
  ResidualNonzero,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so that
/// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace padhyp
