#pragma once

#include <stdexcept>
#include <string>

namespace nabla {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point lies off the lattice or outside a function's domain, or a
/// function lacks the history an operator needs.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Gamma-ratio pole with no convention attached (t + nu a non-positive
/// integer while t is not).
class PoleError : public Error {
 public:
  using Error::Error;
};

/// An input violates a type invariant (non-positive order, p <= 0, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A structural hypothesis (such as q == 0) does not hold for the given input.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// The boundary value problem is not uniquely solvable.
class SingularError : public Error {
 public:
  using Error::Error;
};

/// Dense elimination met a pivot below tolerance.
class SingularSystemError : public SingularError {
 public:
  using SingularError::SingularError;
};

}  // namespace nabla
