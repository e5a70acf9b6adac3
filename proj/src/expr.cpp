#include "fekete/expr.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace fekete {

namespace {

constexpr long kMaxPow2Exponent = 1L << 20;
constexpr int kMaxDepth = 512;

struct FunctionInfo {
  const char* name;
  int arity;
};

constexpr FunctionInfo kFunctions[] = {
    {"floor", 1}, {"ceil", 1}, {"abs", 1},
    {"pow2neg", 1}, {"min", 2}, {"max", 2},
};

const FunctionInfo* find_function(const std::string& name) {
  for (const auto& f : kFunctions) {
    if (name == f.name) return &f;
  }
  return nullptr;
}

enum class Tok { integer, ident, punct, end };

struct Token {
  Tok kind;
  std::size_t offset;
  mpz_class int_value;
  std::string text;
  char punct = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    Token t;
    t.offset = pos_;
    if (pos_ >= text_.size()) {
      t.kind = Tok::end;
      return t;
    }
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
      t.kind = Tok::integer;
      t.int_value = mpz_class(text_.substr(start, pos_ - start), 10);
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      t.kind = Tok::ident;
      t.text = text_.substr(start, pos_ - start);
      return t;
    }
    if (c == '+' || c == '-' || c == '*' || c == '/' || c == '(' || c == ')' || c == ',') {
      ++pos_;
      t.kind = Tok::punct;
      t.punct = c;
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& allowed_vars)
      : lexer_(text), vars_(allowed_vars) {
    advance();
  }

  ExprPtr run() {
    ExprPtr e = parse_expr(0);
    if (cur_.kind != Tok::end) {
      throw ParseError("unexpected trailing input", cur_.offset);
    }
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  bool at_punct(char c) const { return cur_.kind == Tok::punct && cur_.punct == c; }

  void expect_punct(char c, const char* what) {
    if (!at_punct(c)) {
      throw ParseError(std::string("expected '") + c + "' " + what, cur_.offset);
    }
    advance();
  }

  ExprPtr parse_expr(int depth) {
    check_depth(depth);
    ExprPtr lhs = parse_term(depth + 1);
    while (at_punct('+') || at_punct('-')) {
      char op = cur_.punct;
      advance();
      ExprPtr rhs = parse_term(depth + 1);
      lhs = Expr::binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ExprPtr parse_term(int depth) {
    check_depth(depth);
    ExprPtr lhs = parse_factor(depth + 1);
    while (at_punct('*') || at_punct('/')) {
      char op = cur_.punct;
      advance();
      ExprPtr rhs = parse_factor(depth + 1);
      lhs = Expr::binary(op, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  ExprPtr parse_factor(int depth) {
    check_depth(depth);
    if (cur_.kind == Tok::integer) {
      ExprPtr e = Expr::literal(Rational(cur_.int_value));
      advance();
      return e;
    }
    if (cur_.kind == Tok::ident) {
      const std::string name = cur_.text;
      const std::size_t offset = cur_.offset;
      advance();
      if (const FunctionInfo* fn = find_function(name)) {
        expect_punct('(', ("after function '" + name + "'").c_str());
        std::vector<ExprPtr> args;
        args.push_back(parse_expr(depth + 1));
        if (at_punct(',')) {
          const std::size_t comma_offset = cur_.offset;
          if (fn->arity < 2) {
            throw ParseError("function '" + name + "' expects 1 argument",
                             comma_offset);
          }
          advance();
          args.push_back(parse_expr(depth + 1));
        }
        if (static_cast<int>(args.size()) != fn->arity) {
          throw ParseError("function '" + name + "' expects " +
                               std::to_string(fn->arity) + " argument(s)",
                           cur_.offset);
        }
        expect_punct(')', "to close the argument list");
        return Expr::call(name, std::move(args));
      }
      if (std::find(vars_.begin(), vars_.end(), name) != vars_.end()) {
        return Expr::variable(name);
      }
      throw UnknownVariable("unknown identifier '" + name + "'", offset);
    }
    if (at_punct('(')) {
      advance();
      ExprPtr e = parse_expr(depth + 1);
      expect_punct(')', "to close the group");
      return e;
    }
    throw ParseError("expected a number, variable, function or group", cur_.offset);
  }

  void check_depth(int depth) const {
    if (depth > kMaxDepth) {
      throw ParseError("expression nested too deeply", cur_.offset);
    }
  }

  Lexer lexer_;
  Token cur_;
  std::vector<std::string> vars_;
};

int precedence(const Expr& e) {
  if (e.kind() != Expr::Kind::binary) return 3;
  return (e.op() == '+' || e.op() == '-') ? 1 : 2;
}

bool is_atom(const Expr& e) {
  return e.kind() == Expr::Kind::literal || e.kind() == Expr::Kind::variable;
}

void print(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::literal:
      out += e.value().to_string();
      return;
    case Expr::Kind::variable:
      out += e.name();
      return;
    case Expr::Kind::call: {
      out += e.name();
      out += '(';
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i > 0) out += ", ";
        print(*e.args()[i], out);
      }
      out += ')';
      return;
    }
    case Expr::Kind::binary: {
      const int prec = precedence(e);
      const Expr& lhs = *e.args()[0];
      const Expr& rhs = *e.args()[1];
      const bool lhs_parens = precedence(lhs) < prec;
      const bool rhs_parens = precedence(rhs) <= prec;
      // Quotients of two atoms print tightly, matching the NUMBER
      // "a/b" form of the grammar; everything else gets spaces.
      const bool tight = e.op() == '/' && is_atom(lhs) && is_atom(rhs);
      if (lhs_parens) out += '(';
      print(lhs, out);
      if (lhs_parens) out += ')';
      if (!tight) out += ' ';
      out += e.op();
      if (!tight) out += ' ';
      if (rhs_parens) out += '(';
      print(rhs, out);
      if (rhs_parens) out += ')';
      return;
    }
  }
}

}  // namespace

ExprPtr Expr::literal(Rational value) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::literal;
  e->value_ = std::move(value);
  return e;
}

ExprPtr Expr::variable(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::variable;
  e->name_ = std::move(name);
  return e;
}

ExprPtr Expr::binary(char op, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::binary;
  e->op_ = op;
  e->args_ = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr Expr::call(std::string func, std::vector<ExprPtr> args) {
  auto e = std::make_shared<Expr>();
  e->kind_ = Kind::call;
  e->name_ = std::move(func);
  e->args_ = std::move(args);
  return e;
}

ExprPtr parse(const std::string& text, const std::vector<std::string>& allowed_vars) {
  return Parser(text, allowed_vars).run();
}

Rational eval_expr(const Expr& e, const Bindings& bindings) {
  switch (e.kind()) {
    case Expr::Kind::literal:
      return e.value();
    case Expr::Kind::variable: {
      auto it = bindings.find(e.name());
      if (it == bindings.end()) {
        throw EvalError("unbound variable '" + e.name() + "'");
      }
      return Rational(static_cast<long>(it->second));
    }
    case Expr::Kind::binary: {
      Rational lhs = eval_expr(*e.args()[0], bindings);
      Rational rhs = eval_expr(*e.args()[1], bindings);
      switch (e.op()) {
        case '+':
          return lhs + rhs;
        case '-':
          return lhs - rhs;
        case '*':
          return lhs * rhs;
        case '/':
          if (rhs.sign() == 0) {
            throw EvalError("division by zero while evaluating expression");
          }
          return lhs / rhs;
      }
      throw EvalError("corrupt expression node");
    }
    case Expr::Kind::call: {
      Rational a0 = eval_expr(*e.args()[0], bindings);
      if (e.name() == "floor") return Rational(a0.floor());
      if (e.name() == "ceil") return Rational(a0.ceil());
      if (e.name() == "abs") return a0.abs();
      if (e.name() == "pow2neg") {
        if (!a0.is_integer()) {
          throw EvalError("pow2neg needs an integer exponent, got " + a0.to_string());
        }
        if (!a0.num().fits_slong_p() ||
            std::abs(a0.num().get_si()) > kMaxPow2Exponent) {
          throw EvalError("pow2neg exponent out of range");
        }
        return Rational::pow2(-a0.num().get_si());
      }
      Rational a1 = eval_expr(*e.args()[1], bindings);
      if (e.name() == "min") return a0 < a1 ? a0 : a1;
      if (e.name() == "max") return a0 < a1 ? a1 : a0;
      throw EvalError("unknown function '" + e.name() + "'");
    }
  }
  throw EvalError("corrupt expression node");
}

std::string to_text(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

}  // namespace fekete
