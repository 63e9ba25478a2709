#pragma once

#include <stdexcept>
#include <string>

namespace conefix {

/// Process exit codes used by the command-line tool. Library errors carry one
/// so the CLI can map an exception to its exit status without string matching.
enum class ExitCode : int {
  ok = 0,
  precondition = 1,  // a solver or classifier hypothesis does not hold
  parse = 2,         // input is not well-formed JSON
  schema = 3,        // JSON does not match the instance schema
  validation = 4,    // instance parsed but violates a mathematical invariant
  internal = 5,      // a theorem-backed assertion failed: a bug, not bad input
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  [[nodiscard]] ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error(ExitCode::precondition, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ExitCode::parse, what) {}
};

class SchemaError : public Error {
 public:
  explicit SchemaError(const std::string& what) : Error(ExitCode::schema, what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ExitCode::validation, what) {}
};

class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(ExitCode::internal, what) {}
};

}  // namespace conefix
