#pragma once

#include <stdexcept>
#include <string>

namespace stackyfan {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates an operation's precondition (wrong level, not in
/// the lattice, invalid triangulation, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The instance is larger than a configured bound; the operation refuses
/// rather than truncating its output.
class BoundError : public Error {
 public:
  using Error::Error;
};

/// Malformed serialized input; the message carries the position or path.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace stackyfan
