#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wres {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live in different rings.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed polynomial text; `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A jet computation needed more precision than the truncation bound allows.
class TruncationTooSmall : public Error {
 public:
  using Error::Error;
};

/// Broken internal invariant (inadmissible center, failed descent, ...).
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

/// A configured size limit was hit (Groebner basis growth, step count).
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace wres
