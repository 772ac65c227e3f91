#pragma once

#include <stdexcept>
#include <string>

namespace hillspec {

// Invalid input: malformed tables, bad ranges, unreadable files.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical kernel could not deliver a trustworthy result
// (step-size underflow, eigensolver non-convergence, missed root).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checked invariant or harness assertion was violated.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hillspec
