#pragma once

#include <stdexcept>
#include <string>

namespace jsr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not agree (non-square input, mismatched set members, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be symmetric is not.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Input values are malformed: NaN/Inf entries, bad weights, empty sets.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A requested object would exceed the configured size budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// An upper bound was requested whose invariant-cone precondition is
/// neither verified (entrywise nonnegativity) nor asserted by the caller.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

/// An iterative eigenvalue estimate did not settle.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace jsr
