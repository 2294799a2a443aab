#pragma once

#include <stdexcept>
#include <string>

namespace macfaces {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed user input: bad JSON, a pmf that does not sum to one, a rate
// vector of the wrong length, an unparseable label.  The message names the
// offending field or token.
class ValidationError : public Error {
public:
  using Error::Error;
};

// A caller violated a documented precondition of an API (overlapping sets
// passed to mutual_info, a non-permutation passed to dominant_vertex, an
// invalid face label passed to a face operation).
class PreconditionError : public Error {
public:
  using Error::Error;
};

// A request exceeded a hard size cap (face enumeration, brute-force
// cross-validation) rather than being wrong per se.
class CapacityError : public Error {
public:
  using Error::Error;
};

// The channel fails the non-degeneracy test, so face-structure operations
// that rely on it refuse to run.
class DegenerateRegionError : public Error {
public:
  using Error::Error;
};

// An internal consistency check failed: two independent computations of the
// same quantity disagreed, or a numerical result was out of its provable
// range by more than roundoff.  Always a bug, never a user error.
class InternalError : public Error {
public:
  using Error::Error;
};

}  // namespace macfaces
