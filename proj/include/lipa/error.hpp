#pragma once

#include <stdexcept>
#include <string>

namespace lipa {

enum class ErrorKind {
  domain,          // argument outside the function's domain
  parameter,       // invalid tuning parameter (lambda, M, trials, ...)
  precondition,    // input violates an operation's stated precondition
  aliasing,        // sampling grid too coarse for the coefficient box
  degenerate,      // majorant vanishes where a ratio needs it
  undefined_ratio, // ratio of norms with a zero denominator
  not_applicable,  // estimator requested outside its case
  box_mismatch,    // operands live in incompatible coefficient boxes
  io,              // unreadable or malformed file / document
};

const char* to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` distinguishes the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace lipa
