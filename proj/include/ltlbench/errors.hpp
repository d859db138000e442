#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltlbench {

enum class SyntaxErrorKind {
  EmptyInput,
  UnbalancedParentheses,
  MissingOperand,
  InvalidApToken,
  UnexpectedToken,
  UnknownConstructor,
  WrongArity,
  InvalidLiteral,
};

const char* to_string(SyntaxErrorKind kind);

/// Rejection of a formula string, by either the infix or the constructor parser.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(SyntaxErrorKind kind, std::size_t offset, std::string expected);

  SyntaxErrorKind kind() const noexcept { return kind_; }
  /// Byte offset into the parsed text.
  std::size_t offset() const noexcept { return offset_; }
  const std::string& expected() const noexcept { return expected_; }

 private:
  SyntaxErrorKind kind_;
  std::size_t offset_;
  std::string expected_;
};

/// A string argument that is not a legal atomic proposition name.
class LexError : public SyntaxError {
 public:
  LexError(std::size_t offset, const std::string& token);
};

class TraceFormatError : public std::runtime_error {
 public:
  TraceFormatError(std::size_t offset, const std::string& what);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFeature : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MutationExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::size_t line, std::string field, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

class InvariantViolation : public std::runtime_error {
 public:
  InvariantViolation(std::string item_id, const std::string& reason);
  const std::string& item_id() const noexcept { return item_id_; }

 private:
  std::string item_id_;
};

enum class PromptErrorKind { MissingSlot, InvalidCombination, TemplateNotFound };

class PromptError : public std::runtime_error {
 public:
  PromptError(PromptErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  PromptErrorKind kind() const noexcept { return kind_; }

 private:
  PromptErrorKind kind_;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ltlbench
