#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rexmine {

/// Base class for all library errors. The CLI maps subclasses onto exit
/// codes: data/input problems -> 2, internal invariant violations -> 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- data / input errors ---

class InvalidExampleError : public Error {
 public:
  using Error::Error;
};

class EncodingError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class EmptyLineError : public Error {
 public:
  explicit EmptyLineError(std::size_t line)
      : Error("blank line at line " + std::to_string(line)), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class SchemaError : public Error {
 public:
  SchemaError(std::size_t line, std::string field)
      : Error("schema error at line " + std::to_string(line) + ", field '" +
              field + "'"),
        line_(line),
        field_(std::move(field)) {}
  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class EmptyTableError : public Error {
 public:
  EmptyTableError() : Error("cluster table is empty") {}
};

class EmptyCdfError : public Error {
 public:
  EmptyCdfError() : Error("CDF is empty") {}
};

class EmptyClusterError : public Error {
 public:
  EmptyClusterError() : Error("cluster has no members") {}
};

class OverrideOutOfRangeError : public Error {
 public:
  using Error::Error;
};

class DivisionByZeroError : public Error {
 public:
  using Error::Error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

// --- internal invariant violations (pipeline bugs, exit code 3) ---

class AlignmentError : public Error {
 public:
  using Error::Error;
};

class CompileError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rexmine
