#pragma once

#include <json.hpp>

#include <functional>
#include <memory>
#include <string>

#include "fekete/expr.hpp"
#include "fekete/rational.hpp"

namespace fekete {

// Data model for computable sequences of rationals and the objects built
// from them.  Indices are 1-based throughout.  An approximation target
// "within 2^-M" always means strictly within, and the radii stay exact.

using Index = long long;
using Precision = long long;
using Json = nlohmann::json;

constexpr Index kDefaultBudget = 1000000;

// Evaluable total map index -> rational.  The optional spec field holds the
// JSON form ({"kind": "expr", ...} or {"kind": "builtin", ...}) when the
// definition came from, or is destined for, the wire; closures built only
// for internal composition leave it null.
struct SeqDef {
  std::function<Rational(Index)> fn;
  Json spec = nullptr;

  static SeqDef from_expr(const std::string& text);
  static SeqDef constant(const Rational& value);

  Rational operator()(Index n) const;
};

Rational eval_seq(const SeqDef& def, Index n);

// Total map (n, m) -> rational; n indexes the sequence member, m the
// approximation stage.
struct DoubleSeqDef {
  std::function<Rational(Index, Index)> fn;
  Json spec = nullptr;

  static DoubleSeqDef from_expr(const std::string& text);

  Rational operator()(Index n, Index m) const;
};

// Modulus of convergence M -> index.  Values are normalized to be
// non-decreasing in M by taking the running maximum over 0..M, so callers
// may rely on kappa(M+1) >= kappa(M) regardless of the raw map.  Any value
// above the budget raises BudgetExhausted.
class Modulus {
 public:
  Modulus() = default;
  Modulus(std::function<Index(Precision)> raw, Index budget, Json spec = nullptr);

  static Modulus from_expr(const std::string& text, Index budget = kDefaultBudget);

  Index operator()(Precision M) const;
  Index budget() const { return budget_; }
  const Json& spec() const { return spec_; }

 private:
  struct State;
  std::shared_ptr<State> state_;
  Index budget_ = kDefaultBudget;
  Json spec_ = nullptr;
};

// Modulus for double sequences: (n, M) -> index.  Values are used pointwise
// per (n, M) with no cross-M normalization; constructions that sweep the
// member index query each pair exactly once, so a query costs one evaluation.
class Modulus2 {
 public:
  Modulus2() = default;
  Modulus2(std::function<Index(Index, Precision)> raw, Index budget,
           Json spec = nullptr);

  static Modulus2 from_expr(const std::string& text, Index budget = kDefaultBudget);

  Index operator()(Index n, Precision M) const;
  Index budget() const { return budget_; }
  const Json& spec() const { return spec_; }

 private:
  std::function<Index(Index, Precision)> raw_;
  Index budget_ = kDefaultBudget;
  Json spec_ = nullptr;
};

// A sequence of rational approximants together with a certified modulus:
// |x - seq(n)| < 2^-M for every n >= modulus(M).
struct StandardDescription {
  SeqDef seq;
  Modulus modulus;
};

// Per-member descriptions of a whole sequence of reals:
// |x_n - dseq(n, m)| < 2^-M for every m >= modulus2(n, M).
struct SeqStandardDescription {
  DoubleSeqDef dseq;
  Modulus2 modulus2;
};

// Monotone envelope pair: lower members non-decreasing, upper members
// non-increasing, both converging to the same value.  Declared, not
// enforced; operations report CertificateViolation on observed breaches.
struct MonotoneRepresentation {
  SeqStandardDescription lower;
  SeqStandardDescription upper;
};

enum class AdditiveKind { superadditive, subadditive };

// Description of a sequence (a_n) with a_{n+m} >= a_n + a_m (super) or
// <= (sub); the represented real is the limit of a_n / n.
struct AdditiveRepresentation {
  AdditiveKind kind;
  SeqStandardDescription desc;
};

enum class ZWKind { lower, upper };

// Description of a sequence (z_n) whose supremum (lower kind) or infimum
// (upper kind) is the represented real.  Boundedness of the target is part
// of the declared contract and not checked.
struct ZWRepresentation {
  ZWKind kind;
  SeqStandardDescription desc;
};

Rational approx_real(const StandardDescription& d, Precision M);
Interval approx_real_interval(const StandardDescription& d, Precision M);

Rational approx_member(const SeqStandardDescription& d, Index n, Precision M);
Interval approx_member_interval(const SeqStandardDescription& d, Index n,
                                Precision M);

enum class FieldOp { add, mul };

// Arithmetic on represented reals.  Addition shifts precision by one;
// multiplication shifts by 1 + ceil(log2 B) where B bounds both factors
// (computed from one coarse approximation of each input, so it can raise
// BudgetExhausted by itself).
StandardDescription real_field_op(FieldOp op, const StandardDescription& a,
                                  const StandardDescription& b);

}  // namespace fekete
