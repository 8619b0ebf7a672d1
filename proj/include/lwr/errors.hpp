#pragma once

#include <stdexcept>
#include <string>

namespace lwr {

// Constraint level incompatible with the interface speed (q outside the
// admissible band for the shifted flux).
struct InadmissibleConstraint : std::runtime_error {
  explicit InadmissibleConstraint(const std::string& what)
      : std::runtime_error(what) {}
};

// Root bracketing failed: the requested flux level is at or above max F_s.
struct NoRootError : std::runtime_error {
  explicit NoRootError(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfDomainError : std::runtime_error {
  explicit OutOfDomainError(const std::string& what)
      : std::runtime_error(what) {}
};

// Interface moved by more than one cell in a single step.
struct InvalidStepError : std::runtime_error {
  explicit InvalidStepError(const std::string& what)
      : std::runtime_error(what) {}
};

struct CflViolation : std::runtime_error {
  explicit CflViolation(const std::string& what) : std::runtime_error(what) {}
};

struct ScheduleError : std::runtime_error {
  explicit ScheduleError(const std::string& what) : std::runtime_error(what) {}
};

struct PhaseInvariantViolation : std::runtime_error {
  explicit PhaseInvariantViolation(const std::string& what)
      : std::runtime_error(what) {}
};

struct PreconditionError : std::runtime_error {
  explicit PreconditionError(const std::string& what)
      : std::runtime_error(what) {}
};

struct ConfigMismatch : std::runtime_error {
  explicit ConfigMismatch(const std::string& what)
      : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& message)
      : std::runtime_error("line " + std::to_string(line_) + ": " + message),
        line(line_) {}
};

struct ValidationError : std::runtime_error {
  std::string field;
  ValidationError(const std::string& field_, const std::string& reason)
      : std::runtime_error(field_ + ": " + reason), field(field_) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lwr
