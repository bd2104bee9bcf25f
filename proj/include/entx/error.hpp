#pragma once

#include <stdexcept>
#include <string>

namespace entx {

enum class ErrorKind {
  NotHermitian,
  NoConvergence,
  InvalidState,
  DomainError,
  ClosedFormDomain,
  StepTooLarge,
  InvariantViolation,
  EngineMismatch,
  BoundViolation,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace entx
