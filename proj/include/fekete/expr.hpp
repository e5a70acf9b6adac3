#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fekete/rational.hpp"

namespace fekete {

// Expression language for rational-valued sequence and modulus definitions.
//
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := NUMBER | VAR | FUNC "(" expr ("," expr)? ")" | "(" expr ")"
//   NUMBER := integer | integer "/" integer
//
// Operators are left associative; there is no unary minus and no
// exponentiation operator.  Functions: floor, ceil, abs, pow2neg (one
// argument), min, max (two arguments).  pow2neg(k) is 2^-k for an
// integer-valued k, negative k allowed.  Which variable names are legal is
// a per-call-site choice passed to parse().
//
// A NUMBER of the form "a/b" and the division "a / b" evaluate to the same
// rational, so the parser keeps a single integer-literal token kind and
// lets the term rule build the quotient.

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  enum class Kind { literal, variable, binary, call };

  static ExprPtr literal(Rational value);
  static ExprPtr variable(std::string name);
  static ExprPtr binary(char op, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr call(std::string func, std::vector<ExprPtr> args);

  Kind kind() const { return kind_; }
  const Rational& value() const { return value_; }
  const std::string& name() const { return name_; }
  char op() const { return op_; }
  const std::vector<ExprPtr>& args() const { return args_; }

 private:
  Kind kind_ = Kind::literal;
  Rational value_;
  std::string name_;
  char op_ = 0;
  std::vector<ExprPtr> args_;
};

using Bindings = std::map<std::string, long long>;

// Throws ParseError (with byte offset) on any malformed input and
// UnknownVariable for identifiers outside allowed_vars.
ExprPtr parse(const std::string& text, const std::vector<std::string>& allowed_vars);

// Exact evaluation under integer variable bindings.  Total on integers up
// to resource guards: division by zero, a fractional or oversized pow2neg
// exponent and an unbound variable all raise EvalError.
Rational eval_expr(const Expr& e, const Bindings& bindings);

// Canonical rendering: single spaces around binary operators, minimal
// parentheses, right operands of equal precedence parenthesized.  Printing
// then reparsing then printing again is the identity on the result.
std::string to_text(const Expr& e);

}  // namespace fekete
