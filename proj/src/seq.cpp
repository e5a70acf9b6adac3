#include "fekete/seq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace fekete {

namespace {

Index index_from_value(const Rational& v) {
  if (!v.is_integer()) {
    throw EvalError("modulus value must be an integer, got " + v.to_string());
  }
  if (!v.num().fits_slong_p()) {
    throw BudgetExhausted("modulus value " + v.to_string() +
                          " exceeds every representable budget");
  }
  const long raw = v.num().get_si();
  if (raw < 1) {
    throw EvalError("modulus value must be >= 1, got " + v.to_string());
  }
  return raw;
}

long ceil_log2(const Rational& b) {
  mpz_class c = b.ceil();
  if (c <= 1) return 0;
  mpz_class below = c - 1;
  return static_cast<long>(mpz_sizeinbase(below.get_mpz_t(), 2));
}

}  // namespace

SeqDef SeqDef::from_expr(const std::string& text) {
  ExprPtr e = parse(text, {"n"});
  SeqDef def;
  def.fn = [e](Index n) { return eval_expr(*e, {{"n", n}}); };
  def.spec = Json{{"kind", "expr"}, {"text", text}};
  return def;
}

SeqDef SeqDef::constant(const Rational& value) {
  SeqDef def;
  def.fn = [value](Index) { return value; };
  def.spec = Json{{"kind", "expr"}, {"text", value.to_string()}};
  return def;
}

Rational SeqDef::operator()(Index n) const {
  if (!fn) {
    throw EvalError("empty sequence definition");
  }
  if (n < 1) {
    throw PreconditionViolation("sequence index must be >= 1, got " +
                                std::to_string(n));
  }
  return fn(n);
}

Rational eval_seq(const SeqDef& def, Index n) { return def(n); }

DoubleSeqDef DoubleSeqDef::from_expr(const std::string& text) {
  ExprPtr e = parse(text, {"n", "m"});
  DoubleSeqDef def;
  def.fn = [e](Index n, Index m) {
    return eval_expr(*e, {{"n", n}, {"m", m}});
  };
  def.spec = Json{{"kind", "expr"}, {"text", text}};
  return def;
}

Rational DoubleSeqDef::operator()(Index n, Index m) const {
  if (!fn) {
    throw EvalError("empty sequence definition");
  }
  if (n < 1 || m < 1) {
    throw PreconditionViolation("double sequence indices must be >= 1, got (" +
                                std::to_string(n) + ", " + std::to_string(m) +
                                ")");
  }
  return fn(n, m);
}

struct Modulus::State {
  std::function<Index(Precision)> raw;
  std::mutex mu;
  std::vector<Index> norm;  // norm[M] = max(raw(0..M)), filled on demand
};

Modulus::Modulus(std::function<Index(Precision)> raw, Index budget, Json spec)
    : state_(std::make_shared<State>()), budget_(budget), spec_(std::move(spec)) {
  state_->raw = std::move(raw);
}

Modulus Modulus::from_expr(const std::string& text, Index budget) {
  ExprPtr e = parse(text, {"M"});
  return Modulus(
      [e](Precision M) { return index_from_value(eval_expr(*e, {{"M", M}})); },
      budget, Json{{"kind", "expr"}, {"text", text}});
}

Index Modulus::operator()(Precision M) const {
  if (!state_) {
    throw EvalError("empty modulus");
  }
  if (M < 0) {
    throw PreconditionViolation("modulus argument must be >= 0, got " +
                                std::to_string(M));
  }
  Index value;
  {
    std::lock_guard<std::mutex> lock(state_->mu);
    while (static_cast<Precision>(state_->norm.size()) <= M) {
      const Precision next = static_cast<Precision>(state_->norm.size());
      Index v = state_->raw(next);
      if (!state_->norm.empty()) {
        v = std::max(v, state_->norm.back());
      }
      state_->norm.push_back(v);
    }
    value = state_->norm[static_cast<std::size_t>(M)];
  }
  if (value > budget_) {
    throw BudgetExhausted("modulus value " + std::to_string(value) +
                          " exceeds budget " + std::to_string(budget_));
  }
  return value;
}

Modulus2::Modulus2(std::function<Index(Index, Precision)> raw, Index budget,
                   Json spec)
    : raw_(std::move(raw)), budget_(budget), spec_(std::move(spec)) {}

Modulus2 Modulus2::from_expr(const std::string& text, Index budget) {
  ExprPtr e = parse(text, {"n", "M"});
  return Modulus2(
      [e](Index n, Precision M) {
        return index_from_value(eval_expr(*e, {{"n", n}, {"M", M}}));
      },
      budget, Json{{"kind", "expr"}, {"text", text}});
}

Index Modulus2::operator()(Index n, Precision M) const {
  if (!raw_) {
    throw EvalError("empty modulus");
  }
  if (n < 1) {
    throw PreconditionViolation("modulus member index must be >= 1, got " +
                                std::to_string(n));
  }
  if (M < 0) {
    throw PreconditionViolation("modulus argument must be >= 0, got " +
                                std::to_string(M));
  }
  const Index value = raw_(n, M);
  if (value > budget_) {
    throw BudgetExhausted("modulus value " + std::to_string(value) +
                          " exceeds budget " + std::to_string(budget_));
  }
  return value;
}

Rational approx_real(const StandardDescription& d, Precision M) {
  return d.seq(d.modulus(M));
}

Interval approx_real_interval(const StandardDescription& d, Precision M) {
  const Rational r = approx_real(d, M);
  const Rational radius = Rational::pow2(static_cast<long>(-M));
  return Interval{r - radius, r + radius};
}

Rational approx_member(const SeqStandardDescription& d, Index n, Precision M) {
  return d.dseq(n, d.modulus2(n, M));
}

Interval approx_member_interval(const SeqStandardDescription& d, Index n,
                                Precision M) {
  const Rational r = approx_member(d, n, M);
  const Rational radius = Rational::pow2(static_cast<long>(-M));
  return Interval{r - radius, r + radius};
}

StandardDescription real_field_op(FieldOp op, const StandardDescription& a,
                                  const StandardDescription& b) {
  const Index budget = std::max(a.modulus.budget(), b.modulus.budget());
  StandardDescription out;
  if (op == FieldOp::add) {
    out.seq.fn = [sa = a.seq, sb = b.seq](Index n) { return sa(n) + sb(n); };
    out.modulus = Modulus(
        [ma = a.modulus, mb = b.modulus](Precision M) {
          return std::max(ma(M + 1), mb(M + 1));
        },
        budget);
    return out;
  }
  // One coarse approximation of each factor pins the magnitude bound; +2
  // leaves room for both the true values and every windowed approximant.
  const Rational ra = approx_real(a, 0);
  const Rational rb = approx_real(b, 0);
  const Rational bound = std::max(ra.abs(), rb.abs()) + Rational(2);
  const long shift = 1 + ceil_log2(bound);
  out.seq.fn = [sa = a.seq, sb = b.seq](Index n) { return sa(n) * sb(n); };
  out.modulus = Modulus(
      [ma = a.modulus, mb = b.modulus, shift](Precision M) {
        return std::max(ma(M + shift), mb(M + shift));
      },
      budget);
  return out;
}

}  // namespace fekete
