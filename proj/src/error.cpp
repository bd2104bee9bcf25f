#include "entx/error.hpp"

namespace entx {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::ClosedFormDomain: return "ClosedFormDomain";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::EngineMismatch: return "EngineMismatch";
    case ErrorKind::BoundViolation: return "BoundViolation";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace entx
