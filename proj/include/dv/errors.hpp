#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dv {

// Bad arguments to an operation: out-of-range indices, empty column sets,
// assignments that do not satisfy what they claim to.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed text input. line() is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A configured cap (node limit, column cap, variable cap, deadline) was hit.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A column set does not have the consistency-prefix / one-per-bundle shape
// that every solution of a reduced instance has.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Matrix has duplicate rows, so no column set can separate them.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dv
