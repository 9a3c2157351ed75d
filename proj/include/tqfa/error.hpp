#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tqfa {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Unknown state, letter or point name.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Malformed input data (automaton, space, endomorphism, cover map, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A diagram slice does not fit the boundary it is stacked on.
class TypeError : public Error {
 public:
  TypeError(std::string what, std::size_t slice)
      : Error(std::move(what)), slice_(slice) {}

  // Index of the offending slice; npos when the mismatch is at the outer
  // boundary (compose/tensor/codomain check).
  std::size_t slice() const noexcept { return slice_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  std::size_t slice_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A brute-force enumeration or evaluation would exceed its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Operation not defined for the given model (e.g. foam vertices on a bare NFA).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace tqfa
