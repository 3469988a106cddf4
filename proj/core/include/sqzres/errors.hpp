#pragma once

#include <stdexcept>
#include <string>

namespace sqzres {

// Violated precondition on an argument (bad index, zero detuning, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operands with incompatible Hilbert-space structure.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical run left its validity envelope (step size, norm/trace drift).
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested configuration cannot be realized (infinite squeezing, unreachable design).
class UnreachableError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace sqzres
