#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rdens {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed element text; position is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Violated precondition (zero element, torsion where none is allowed, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Input outside the supported fields or the soft performance envelope.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// Parameter extraction did not terminate within its cap.
class DependenceError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed a hard resource limit.
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace rdens
