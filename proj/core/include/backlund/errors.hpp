#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace backlund {

enum class ErrorKind {
  Domain,
  PointMismatch,
  OrderMismatch,
  CriticalPoint,
  Pole,
  DuplicateExponent,
  NegativeDerivative,
  DomainEscape,
  NoRealSeed,
  DegenerateMap,
  SolutionEscape,
  StepUnderflow,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (and the
/// CLI) can tell user errors from numerical ones without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace backlund
