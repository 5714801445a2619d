#pragma once

#include <stdexcept>
#include <string>

namespace ffgpd {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (polynomials, field sizes, flag values).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold: division by zero, mixing
/// elements of different fields, a constant passed where a nonconstant
/// function is required, and similar.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Seeing one of these is a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool cond, const char* what) {
  if (!cond) throw PreconditionError(what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

inline void ensure(bool cond, const char* what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace detail
}  // namespace ffgpd
