#pragma once

#include <vector>

#include "fekete/seq.hpp"

namespace fekete {

enum class BoundDirection { lower_of_limit, upper_of_limit };

// Exact prefix bound on the limit of a_n / n: superadditive sequences bound
// it from below (prefix max), subadditive ones from above (prefix min).
struct BoundReport {
  Index prefix_length = 0;
  Rational bound;
  BoundDirection direction = BoundDirection::lower_of_limit;
};

BoundReport running_bound(const SeqDef& a, AdditiveKind kind, Index N);

// Result of a modulus search: n0 is the first index where the stopping
// conditions hold, kappa the modulus value certified from it.  The sandwich
// and monotone searches certify kappa = n0 directly; the additive searches
// certify kappa = n0 squared.
struct ModulusSearch {
  Index n0 = 0;
  Index kappa = 0;
};

// First n with upper(n) - lower(n) < 2^-M, scanning n = 1, 2, ... up to
// budget.  Under the declared contract (lower non-decreasing, upper
// non-increasing, common limit) every later index of either sequence then
// approximates the limit within 2^-M.  An observed upper(n) < lower(n)
// raises CertificateViolation; running past the budget raises
// BudgetExhausted.
ModulusSearch sandwich_search(const SeqDef& lower, const SeqDef& upper,
                              Precision M, Index budget = kDefaultBudget);
Index sandwich_modulus(const SeqDef& lower, const SeqDef& upper, Precision M,
                       Index budget = kDefaultBudget);

// Derived envelopes for a monotone representation: prefix max over
// approx(m, m) - 2^-m, resp. prefix min over approx(m, m) + 2^-m.  The
// shifts put every term on the limit's near side, the prefix fold makes
// the result monotone, and the radii vanish, so the derived pair feeds the
// sandwich search.
SeqDef monotone_lower_envelope(const SeqStandardDescription& lower);
SeqDef monotone_upper_envelope(const SeqStandardDescription& upper);

ModulusSearch monotone_search(const MonotoneRepresentation& w, Precision M,
                              Index budget = kDefaultBudget);
Index monotone_modulus(const MonotoneRepresentation& w, Precision M,
                       Index budget = kDefaultBudget);

// Least superadditive sequence dominating the base on a prefix:
// h_n = max{ base(n), max{ h_l + h_k : l + k = n } }.  Quadratic in the
// prefix length; extends incrementally and caches computed values.
class SuperadditiveHull {
 public:
  explicit SuperadditiveHull(SeqDef base);

  const Rational& at(Index n);

 private:
  SeqDef base_;
  std::vector<Rational> values_;
};

std::vector<Rational> superadditive_hull(const SeqDef& base, Index N);

// Modulus search for a non-negative superadditive sequence a given a
// non-increasing converse with the same limit of a_n / n.  Stops at the
// first n with converse(n)/n < 2^-(M+1) and converse(n) - 2^-(M+1) < a(n)/n
// and certifies kappa = n0^2: |x - a_n/n| < 2^-M for every n >= kappa.
// Observed a(n) < 0 raises CertificateViolation.
ModulusSearch fekete_search_rational(const SeqDef& a, const SeqDef& converse,
                                     Precision M, Index budget = kDefaultBudget);
Index fekete_modulus_rational(const SeqDef& a, const SeqDef& converse,
                              Precision M, Index budget = kDefaultBudget);

// Derived sequences that reduce an additive-representation pair to the
// rational-sequence search above.
//
// The upper envelope averages the subadditive members before folding:
// l_n = min over m <= n of (approx(m, m) + 2^-m) / m.  The shifted member
// approximations sit strictly above a_m, so after dividing by m they sit
// strictly above a_m / m >= x, and they close in on x because a_m / m does
// and the radii vanish; the prefix min makes the result non-increasing.
SeqDef fekete_upper_envelope(const SeqStandardDescription& sub);

// The lower base truncates at zero: max{0, approx(n, n) - 2^-n}, which
// keeps every term at most a_n while preserving the averaged limit.
SeqDef fekete_lower_base(const SeqStandardDescription& super);

// Full pipeline for a (superadditive, subadditive) description pair with
// common limit and non-negative superadditive part: upper envelope, lower
// base, superadditive hull, then the rational search.  kappa = n0^2 bounds
// a_n / n for the original superadditive members.
ModulusSearch fekete_search(const AdditiveRepresentation& super,
                            const AdditiveRepresentation& sub, Precision M,
                            Index budget = kDefaultBudget);
Index fekete_modulus(const AdditiveRepresentation& super,
                     const AdditiveRepresentation& sub, Precision M,
                     Index budget = kDefaultBudget);

}  // namespace fekete
