#pragma once

#include <stdexcept>
#include <string>

namespace fiq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A propensity or probability fell outside [0, 1].
class RangeError : public Error {
 public:
  using Error::Error;
};

/// An argument violates an operation's precondition (zero denominator,
/// L = 0, window out of range, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Operands do not satisfy the contract of the requested model, e.g. a
/// fixed-point carry model applied to zero-tailed inputs.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed the configured size limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. The message carries line/field diagnostics.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fiq
