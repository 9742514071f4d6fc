#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ehrhart {

// Every failure raised by the library derives from Error so callers can
// catch the whole family at once.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix shapes or ambient dimensions disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError() : Error("matrix is singular (det = 0)") {}
};

// Point set does not span its ambient space.
class DegeneracyError : public Error {
 public:
  using Error::Error;
};

// Input exceeds a desk-scale guard (vertex count, scan size, permutations).
class CapacityError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An internal cross-check failed. Signals a bug, never bad user input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t field, const std::string& what)
      : Error("line " + std::to_string(line) +
              (field ? ", field " + std::to_string(field) : std::string()) +
              ": " + what),
        line_(line),
        field_(field) {}

  std::size_t line() const noexcept { return line_; }
  // 1-based field index within the line, 0 when the whole line is at fault.
  std::size_t field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::size_t field_;
};

}  // namespace ehrhart
