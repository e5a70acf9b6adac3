#include "fekete/fekete.hpp"

#include <utility>

#include "fekete/prefix_cache.hpp"

namespace fekete {

namespace {

constexpr Index kMaxSquarableIndex = 3037000499LL;  // floor(sqrt(2^63 - 1))

Rational pow2_neg(Index e) { return Rational::pow2(static_cast<long>(-e)); }

void check_search_args(Precision M, Index budget) {
  if (M < 0) {
    throw PreconditionViolation("precision must be >= 0, got " +
                                std::to_string(M));
  }
  if (budget < 1) {
    throw PreconditionViolation("budget must be >= 1, got " +
                                std::to_string(budget));
  }
}

Index squared_or_throw(Index n0) {
  if (n0 > kMaxSquarableIndex) {
    throw TooLarge("modulus value " + std::to_string(n0) + "^2 overflows");
  }
  return n0 * n0;
}

}  // namespace

BoundReport running_bound(const SeqDef& a, AdditiveKind kind, Index N) {
  if (N < 1) {
    throw PreconditionViolation("prefix length must be >= 1, got " +
                                std::to_string(N));
  }
  BoundReport report;
  report.prefix_length = N;
  report.direction = kind == AdditiveKind::superadditive
                         ? BoundDirection::lower_of_limit
                         : BoundDirection::upper_of_limit;
  report.bound = a(1);
  for (Index n = 2; n <= N; ++n) {
    const Rational v = a(n) / Rational(static_cast<long>(n));
    if (kind == AdditiveKind::superadditive) {
      if (v > report.bound) report.bound = v;
    } else {
      if (v < report.bound) report.bound = v;
    }
  }
  return report;
}

ModulusSearch sandwich_search(const SeqDef& lower, const SeqDef& upper,
                              Precision M, Index budget) {
  check_search_args(M, budget);
  const Rational radius = pow2_neg(M);
  for (Index n = 1; n <= budget; ++n) {
    const Rational lo = lower(n);
    const Rational hi = upper(n);
    if (hi < lo) {
      throw CertificateViolation("envelopes crossed at n = " +
                                 std::to_string(n));
    }
    if (hi - lo < radius) {
      return ModulusSearch{n, n};
    }
  }
  throw BudgetExhausted("no index up to " + std::to_string(budget) +
                        " brings the envelopes within 2^-" + std::to_string(M));
}

Index sandwich_modulus(const SeqDef& lower, const SeqDef& upper, Precision M,
                       Index budget) {
  return sandwich_search(lower, upper, M, budget).kappa;
}

SeqDef monotone_lower_envelope(const SeqStandardDescription& lower) {
  PrefixExtreme running(
      [lower](Index m) {
        return approx_member(lower, m, m) - pow2_neg(m);
      },
      PrefixExtreme::Kind::max);
  SeqDef out;
  out.fn = [running](Index n) { return running.at(n); };
  return out;
}

SeqDef monotone_upper_envelope(const SeqStandardDescription& upper) {
  PrefixExtreme running(
      [upper](Index m) {
        return approx_member(upper, m, m) + pow2_neg(m);
      },
      PrefixExtreme::Kind::min);
  SeqDef out;
  out.fn = [running](Index n) { return running.at(n); };
  return out;
}

ModulusSearch monotone_search(const MonotoneRepresentation& w, Precision M,
                              Index budget) {
  return sandwich_search(monotone_lower_envelope(w.lower),
                         monotone_upper_envelope(w.upper), M, budget);
}

Index monotone_modulus(const MonotoneRepresentation& w, Precision M,
                       Index budget) {
  return monotone_search(w, M, budget).kappa;
}

SuperadditiveHull::SuperadditiveHull(SeqDef base) : base_(std::move(base)) {}

const Rational& SuperadditiveHull::at(Index n) {
  if (n < 1) {
    throw PreconditionViolation("hull index must be >= 1, got " +
                                std::to_string(n));
  }
  while (static_cast<Index>(values_.size()) < n) {
    const Index next = static_cast<Index>(values_.size()) + 1;
    Rational best = base_(next);
    for (Index l = 1; l + l <= next; ++l) {
      const Rational split = values_[static_cast<std::size_t>(l - 1)] +
                             values_[static_cast<std::size_t>(next - l - 1)];
      if (split > best) best = split;
    }
    values_.push_back(std::move(best));
  }
  return values_[static_cast<std::size_t>(n - 1)];
}

std::vector<Rational> superadditive_hull(const SeqDef& base, Index N) {
  if (N < 1) {
    throw PreconditionViolation("prefix length must be >= 1, got " +
                                std::to_string(N));
  }
  SuperadditiveHull hull(base);
  hull.at(N);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(N));
  for (Index n = 1; n <= N; ++n) {
    out.push_back(hull.at(n));
  }
  return out;
}

ModulusSearch fekete_search_rational(const SeqDef& a, const SeqDef& converse,
                                     Precision M, Index budget) {
  check_search_args(M, budget);
  const Rational half_radius = pow2_neg(M + 1);
  for (Index n = 1; n <= budget; ++n) {
    const Rational an = a(n);
    if (an.sign() < 0) {
      throw CertificateViolation("value at n = " + std::to_string(n) +
                                 " is negative under a non-negative contract");
    }
    const Rational cn = converse(n);
    const Rational nn = Rational(static_cast<long>(n));
    if (cn / nn < half_radius && cn - half_radius < an / nn) {
      return ModulusSearch{n, squared_or_throw(n)};
    }
  }
  throw BudgetExhausted("no index up to " + std::to_string(budget) +
                        " meets the stopping conditions for 2^-" +
                        std::to_string(M));
}

Index fekete_modulus_rational(const SeqDef& a, const SeqDef& converse,
                              Precision M, Index budget) {
  return fekete_search_rational(a, converse, M, budget).kappa;
}

SeqDef fekete_upper_envelope(const SeqStandardDescription& sub) {
  PrefixExtreme running(
      [sub](Index m) {
        return (approx_member(sub, m, m) + pow2_neg(m)) /
               Rational(static_cast<long>(m));
      },
      PrefixExtreme::Kind::min);
  SeqDef out;
  out.fn = [running](Index n) { return running.at(n); };
  return out;
}

SeqDef fekete_lower_base(const SeqStandardDescription& super) {
  SeqDef out;
  out.fn = [super](Index n) {
    const Rational shifted = approx_member(super, n, n) - pow2_neg(n);
    return shifted.sign() < 0 ? Rational(0) : shifted;
  };
  return out;
}

ModulusSearch fekete_search(const AdditiveRepresentation& super,
                            const AdditiveRepresentation& sub, Precision M,
                            Index budget) {
  if (super.kind != AdditiveKind::superadditive) {
    throw PreconditionViolation("first representation must be superadditive");
  }
  if (sub.kind != AdditiveKind::subadditive) {
    throw PreconditionViolation("second representation must be subadditive");
  }
  check_search_args(M, budget);
  SeqDef upper = fekete_upper_envelope(sub.desc);
  SuperadditiveHull hull(fekete_lower_base(super.desc));
  const Rational half_radius = pow2_neg(M + 1);
  for (Index n = 1; n <= budget; ++n) {
    const Rational ln = upper(n);
    const Rational nn = Rational(static_cast<long>(n));
    if (ln / nn < half_radius && ln - half_radius < hull.at(n) / nn) {
      return ModulusSearch{n, squared_or_throw(n)};
    }
  }
  throw BudgetExhausted("no index up to " + std::to_string(budget) +
                        " meets the stopping conditions for 2^-" +
                        std::to_string(M));
}

Index fekete_modulus(const AdditiveRepresentation& super,
                     const AdditiveRepresentation& sub, Precision M,
                     Index budget) {
  return fekete_search(super, sub, M, budget).kappa;
}

}  // namespace fekete
