#pragma once

#include <stdexcept>
#include <string>

namespace hembed {

// Common base so callers can catch everything thrown by this library at once.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (graph files, pattern files, rational literals, JSON).
struct ParseError : Error {
  using Error::Error;
};

// Structurally invalid object: negative edge weight, unsorted subdivision
// offsets, disconnected pattern where a connected one is required, or an
// internal invariant that the surgery loop could not restore.
struct ModelError : Error {
  using Error::Error;
};

// Argument outside the supported range (c < 1, bad vertex id, ...).
struct ParamError : Error {
  using Error::Error;
};

// Instance exceeds a hard size cap of an exhaustive routine.
struct SizeError : Error {
  using Error::Error;
};

// An explicit search budget ran out before the routine reached a verdict.
struct BudgetError : Error {
  using Error::Error;
};

// Two source vertices occupy the same host point, or an image map is not
// injective in some other way that makes distortion undefined.
struct DegenerateError : Error {
  using Error::Error;
};

// An input embedding contracts some pair, violating a non-contraction
// precondition.
struct ContractError : Error {
  using Error::Error;
};

// Serialized data does not match the object it is being attached to
// (unknown vertex labels, missing images, duplicate entries).
struct MismatchError : Error {
  using Error::Error;
};

}  // namespace hembed
