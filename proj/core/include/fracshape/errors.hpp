#pragma once

#include <stdexcept>
#include <string>

namespace fracshape {

// Precondition on an argument's domain was violated.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Kernel evaluated on its diagonal (x == y).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Quantity blows up at the requested point (e.g. the Robin function at the boundary).
class DivergenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// An iterative or extrapolated computation did not settle.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fracshape
