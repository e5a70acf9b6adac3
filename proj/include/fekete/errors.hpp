#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fekete {

// Error taxonomy shared by the whole library.  Every error carries a stable
// code string so the CLI can emit machine-readable error objects and map the
// class of failure onto its exit codes: input problems exit with 2, an
// exhausted search budget with 3, an observed contract violation with 4.
class Error : public std::runtime_error {
 public:
  Error(const char* code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  const char* code() const noexcept { return code_; }

 private:
  const char* code_;
};

struct ZeroDenominator : Error {
  explicit ZeroDenominator(const std::string& what)
      : Error("ZeroDenominator", what) {}
};

struct DivisionByZero : Error {
  explicit DivisionByZero(const std::string& what)
      : Error("DivisionByZero", what) {}
};

// Raised on any rejected text input; offset is the byte position of the
// first offending character.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error("ParseError", what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 protected:
  ParseError(const char* code, const std::string& what, std::size_t offset)
      : Error(code, what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

 private:
  std::size_t offset_;
};

// An identifier that is neither a known function nor one of the variables
// allowed in the current context.
struct UnknownVariable : ParseError {
  UnknownVariable(const std::string& what, std::size_t offset)
      : ParseError("UnknownVariable", what, offset) {}
};

struct EvalError : Error {
  explicit EvalError(const std::string& what) : Error("EvalError", what) {}
};

// A caller broke a documented precondition (index out of range, wrong kind
// of representation passed, and so on).
struct PreconditionViolation : Error {
  explicit PreconditionViolation(const std::string& what)
      : Error("PreconditionViolation", what) {}
};

// A bounded search ran out of its budget before reaching a verdict.  This is
// always distinguishable from a negative verdict.
struct BudgetExhausted : Error {
  explicit BudgetExhausted(const std::string& what)
      : Error("BudgetExhausted", what) {}
};

// Observed evidence that a declared contract of the input data is false,
// for example envelope sequences that cross or a negative member of a
// sequence declared non-negative.
struct CertificateViolation : Error {
  explicit CertificateViolation(const std::string& what)
      : Error("CertificateViolation", what) {}
};

// An operation asked for more enumerated elements than the enumeration
// holds.
struct InsufficientEnumeration : Error {
  explicit InsufficientEnumeration(const std::string& what)
      : Error("InsufficientEnumeration", what) {}
};

// A requested object exceeds a hard size cap (for example a graph power
// with more vertices than the configured limit).
struct TooLarge : Error {
  explicit TooLarge(const std::string& what) : Error("TooLarge", what) {}
};

// A structurally invalid JSON input document.
struct SchemaError : Error {
  explicit SchemaError(const std::string& what) : Error("SchemaError", what) {}
};

}  // namespace fekete
