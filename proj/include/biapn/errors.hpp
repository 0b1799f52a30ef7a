#pragma once

#include <stdexcept>
#include <string>

namespace biapn {

// Shared error taxonomy. Everything derives from std::runtime_error so the CLI
// can map any library failure to a usage/violation exit code in one place.

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZero : DomainError {
  DivisionByZero() : DomainError("division by zero field element") {}
};

// A Table-style family side condition failed; `condition` names which one.
struct ConditionViolated : DomainError {
  std::string condition;
  explicit ConditionViolated(const std::string& cond)
      : DomainError("family condition violated: " + cond), condition(cond) {}
};

struct TooLarge : DomainError {
  explicit TooLarge(const std::string& what) : DomainError(what) {}
};

struct NonInvertible : DomainError {
  explicit NonInvertible(const std::string& what) : DomainError(what) {}
};

// The restricted equivalence search was asked about a pair outside the
// hypotheses it is allowed to decide.
struct PreconditionViolated : DomainError {
  explicit PreconditionViolated(const std::string& what) : DomainError(what) {}
};

}  // namespace biapn
