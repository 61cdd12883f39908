#pragma once

#include <stdexcept>
#include <string>

namespace nwfs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inputs that cannot be combined: different base categories, non-parallel
/// maps, mismatched sources/targets, non-composable chains.
class IncompatibleInputs : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Requested an algebra structure from a run that never converged.
class AbsentAlgebra : public Error {
 public:
  using Error::Error;
};

/// A structure map handed in by the caller fails one of its defining
/// equations; the message names the equation.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// Something that the construction guarantees did not hold. Always a bug.
class InternalConsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace nwfs
