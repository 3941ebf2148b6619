#pragma once

#include <stdexcept>
#include <string>

namespace bft {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (dimension mismatch, bad literal, bad file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Input that is well formed but outside what the library supports
/// (field order, residue of a plane, enumeration caps).
class UnsupportedError : public InputError {
 public:
  using InputError::InputError;
};

/// A quantity the theory leaves undefined, e.g. the case-6 count for n = 2.
class UndefinedValueError : public Error {
 public:
  using Error::Error;
};

/// A mathematical property failed to hold; the message carries the witness.
class ViolationError : public Error {
 public:
  using Error::Error;
};

}  // namespace bft
