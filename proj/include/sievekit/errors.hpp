#pragma once

#include <stdexcept>
#include <string>

namespace sievekit {

/// Invalid construction parameter (grid step, table limit, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain on which a function is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The dimension-2 Selberg factor is only available on 0 < s <= 2.
class BranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A proof hypothesis (beta < 0.68, 0 <= g(p) <= 1/2, ...) is violated.
class HypothesisError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Optimisation problem without an interior optimum.
class InfeasibleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Inputs that would overflow 64-bit arithmetic.
class OverflowGuardError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Self-check failure: two numerical routes disagree or a table lost monotonicity.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace sievekit
