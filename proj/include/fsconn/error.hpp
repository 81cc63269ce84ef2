#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace fsconn {

// Byte offsets are half-open [start, end); line/column are 1-based.
struct SourceSpan {
  std::size_t start{0};
  std::size_t end{0};
  std::size_t line{1};
  std::size_t column{1};

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

// Process exit codes used by the command-line front end.
enum class ExitCode : int {
  ok = 0,
  violation = 1,
  usage = 2,
  validation = 3,
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, std::optional<SourceSpan> span = std::nullopt)
      : std::runtime_error(what), span_(span) {}

  [[nodiscard]] const std::optional<SourceSpan>& span() const noexcept { return span_; }
  [[nodiscard]] virtual ExitCode exit_code() const noexcept { return ExitCode::validation; }

 private:
  std::optional<SourceSpan> span_;
};

// Malformed command lines, bad arity, unknown names: everything that is the caller's fault
// before any data is touched.
class UsageError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::usage; }
};

class ParseError : public UsageError {
 public:
  ParseError(const std::string& what, SourceSpan span) : UsageError(what, span) {}
};

class ArityError : public UsageError {
 public:
  using UsageError::UsageError;
};

class UnknownBuiltin : public UsageError {
 public:
  using UsageError::UsageError;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class UniverseMismatch : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class TagCollision : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CodomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Wraps an error raised while executing a script statement. Keeps the exit code of the
// underlying failure and points at the statement instead of the inner node.
class ScriptError : public Error {
 public:
  ScriptError(const std::string& what, SourceSpan statement, ExitCode code)
      : Error(what, statement), code_(code) {}
  [[nodiscard]] ExitCode exit_code() const noexcept override { return code_; }

 private:
  ExitCode code_;
};

}  // namespace fsconn
