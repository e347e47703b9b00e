#include "backlund/errors.hpp"

namespace backlund {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::PointMismatch: return "PointMismatch";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::CriticalPoint: return "CriticalPoint";
    case ErrorKind::Pole: return "PoleError";
    case ErrorKind::DuplicateExponent: return "DuplicateExponent";
    case ErrorKind::NegativeDerivative: return "NegativeDerivative";
    case ErrorKind::DomainEscape: return "DomainEscape";
    case ErrorKind::NoRealSeed: return "NoRealSeed";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::SolutionEscape: return "SolutionEscape";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace backlund
