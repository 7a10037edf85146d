#pragma once

#include <stdexcept>
#include <string>

namespace defekt {

// Base for every recoverable error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic that is undefined: division by zero, inverse of zero.
class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

// Operands that do not live in the same structure (different primes,
// unrelated towers, mismatched value groups).
class DomainMismatch : public Error {
 public:
  using Error::Error;
};

// A result whose precision cannot be determined from the inputs.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Violated mathematical precondition (Hensel hypothesis, lemma hypothesis, ...).
class HypothesisError : public Error {
 public:
  using Error::Error;
};

}  // namespace defekt
