#pragma once

#include <stdexcept>
#include <string>

namespace acgraph {

// Error taxonomy mirrors the CLI exit codes: usage = 2, I/O = 3, invariant = 4.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments or unsupported option combinations.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Failures reading or writing files, including malformed inputs.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input record; carries the 1-based line (or record) number.
class ParseError : public IoError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : IoError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A contract or internal invariant was violated.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace acgraph
