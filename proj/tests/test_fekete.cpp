#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "fekete/fekete.hpp"

using namespace fekete;

namespace {

Rational rat(long n, long d) { return Rational::from_integers(n, d); }

SeqStandardDescription member_desc(const std::string& dseq_text,
                                   const std::string& mod_text,
                                   Index budget = kDefaultBudget) {
  return SeqStandardDescription{DoubleSeqDef::from_expr(dseq_text),
                                Modulus2::from_expr(mod_text, budget)};
}

Rational p2(long e) { return Rational::pow2(e); }

// Reference hull: full split loop, rebuilt from scratch, no caching.
std::vector<Rational> oracle_hull(const SeqDef& base, Index N) {
  std::vector<Rational> h(static_cast<std::size_t>(N) + 1, Rational(0));
  for (Index n = 1; n <= N; ++n) {
    Rational best = base(n);
    for (Index l = 1; l < n; ++l) {
      const Rational s = h[static_cast<std::size_t>(l)] +
                         h[static_cast<std::size_t>(n - l)];
      if (s > best) best = s;
    }
    h[static_cast<std::size_t>(n)] = best;
  }
  return h;
}

// Reference search for the additive pipeline on exact integer-valued
// member formulas, written as one direct sweep.
Index oracle_pipeline_n0(const SeqDef& super_members, const SeqDef& sub_members,
                         Precision M, Index limit) {
  const Rational half = p2(-(M + 1));
  std::vector<Rational> hull(1, Rational(0));
  Rational upper = (sub_members(1) + p2(-1)) / Rational(1);
  for (Index n = 1; n <= limit; ++n) {
    if (n > 1) {
      const Rational cand =
          (sub_members(n) + p2(static_cast<long>(-n))) /
          Rational(static_cast<long>(n));
      if (cand < upper) upper = cand;
    }
    Rational best = super_members(n) - p2(static_cast<long>(-n));
    if (best.sign() < 0) best = Rational(0);
    for (Index l = 1; l < n; ++l) {
      const Rational s = hull[static_cast<std::size_t>(l)] +
                         hull[static_cast<std::size_t>(n - l)];
      if (s > best) best = s;
    }
    hull.push_back(best);
    const Rational nn = Rational(static_cast<long>(n));
    if (upper / nn < half && upper - half < best / nn) return n;
  }
  return 0;
}

}  // namespace

TEST_CASE("running bounds trap the limit from the declared side") {
  BoundReport lo = running_bound(SeqDef::from_expr("floor(3 * n / 2)"),
                                 AdditiveKind::superadditive, 4);
  CHECK(lo.bound == rat(3, 2));
  CHECK(lo.prefix_length == 4);
  CHECK(lo.direction == BoundDirection::lower_of_limit);

  CHECK(running_bound(SeqDef::from_expr("n"), AdditiveKind::superadditive, 10)
            .bound == Rational(1));

  BoundReport hi = running_bound(SeqDef::from_expr("n + 1"),
                                 AdditiveKind::subadditive, 100);
  CHECK(hi.bound == rat(101, 100));
  CHECK(hi.direction == BoundDirection::upper_of_limit);

  CHECK_THROWS_AS(running_bound(SeqDef::from_expr("n"),
                                AdditiveKind::superadditive, 0),
                  PreconditionViolation);
}

TEST_CASE("running bound grows monotonically on superadditive input") {
  SeqDef a = SeqDef::from_expr("floor(3 * n / 2)");
  Rational prev = running_bound(a, AdditiveKind::superadditive, 1).bound;
  for (Index N = 2; N <= 64; ++N) {
    const Rational cur = running_bound(a, AdditiveKind::superadditive, N).bound;
    CHECK(cur >= prev);
    CHECK(cur <= rat(3, 2));  // never exceeds the limit
    prev = cur;
  }
}

TEST_CASE("sandwich search finds the first small gap") {
  SeqDef lower = SeqDef::from_expr("1 - 1/n");
  SeqDef upper = SeqDef::from_expr("1 + 1/n");
  ModulusSearch s = sandwich_search(lower, upper, 3);
  CHECK(s.n0 == 17);
  CHECK(s.kappa == 17);

  // Independent scan: first n with 2/n < 1/8.
  Index expect = 0;
  for (Index n = 1; n <= 100 && expect == 0; ++n) {
    if (upper(n) - lower(n) < p2(-3)) expect = n;
  }
  CHECK(expect == 17);

  CHECK(sandwich_modulus(SeqDef::from_expr("5"), SeqDef::from_expr("5"), 30) ==
        1);
  CHECK(sandwich_modulus(SeqDef::from_expr("0 - pow2neg(n)"),
                         SeqDef::from_expr("pow2neg(n)"), 4) == 6);
}

TEST_CASE("sandwich guarantee holds across the window") {
  SeqDef lower = SeqDef::from_expr("1 - 1/n");
  SeqDef upper = SeqDef::from_expr("1 + 1/n");
  for (Precision M = 0; M <= 8; ++M) {
    const Index n0 = sandwich_modulus(lower, upper, M);
    for (Index n = n0; n <= n0 + 50; ++n) {
      CHECK((Rational(1) - lower(n)).abs() < p2(static_cast<long>(-M)));
      CHECK((upper(n) - Rational(1)).abs() < p2(static_cast<long>(-M)));
    }
  }
}

TEST_CASE("sandwich rejects crossed envelopes and respects the budget") {
  CHECK_THROWS_AS(
      sandwich_modulus(SeqDef::from_expr("1/n"), SeqDef::from_expr("0"), 3),
      CertificateViolation);
  CHECK_THROWS_AS(sandwich_modulus(SeqDef::from_expr("0"),
                                   SeqDef::from_expr("1/n"), 10, 100),
                  BudgetExhausted);
  CHECK_THROWS_AS(sandwich_modulus(SeqDef::from_expr("0"),
                                   SeqDef::from_expr("1"), -1, 10),
                  PreconditionViolation);
}

TEST_CASE("monotone envelopes derive from member approximations") {
  SeqDef low = monotone_lower_envelope(member_desc("1 - 1/n", "1"));
  CHECK(low(1) == rat(-1, 2));
  CHECK(low(2) == rat(1, 4));
  CHECK(low(3) == rat(13, 24));
  Rational prev = low(1);
  for (Index n = 2; n <= 60; ++n) {
    CHECK(low(n) >= prev);
    CHECK(low(n) < Rational(1));
    prev = low(n);
  }

  SeqDef high = monotone_upper_envelope(member_desc("1 + 1/n", "1"));
  CHECK(high(1) == rat(5, 2));
  prev = high(1);
  for (Index n = 2; n <= 60; ++n) {
    CHECK(high(n) <= prev);
    CHECK(high(n) > Rational(1));
    prev = high(n);
  }
}

TEST_CASE("monotone modulus on exact constants is M + 2") {
  MonotoneRepresentation w{member_desc("7/3", "1"), member_desc("7/3", "1")};
  for (Precision M = 0; M <= 12; ++M) {
    CHECK(monotone_modulus(w, M) == M + 2);
  }
}

TEST_CASE("monotone modulus certifies the original members") {
  MonotoneRepresentation w{member_desc("1 - 1/n", "1"),
                           member_desc("1 + 1/n", "1")};
  const Index n0 = monotone_modulus(w, 1);
  for (Index n = n0; n <= n0 + 50; ++n) {
    CHECK((Rational(1) - approx_member(w.lower, n, 20)).abs() < p2(-1));
    CHECK((approx_member(w.upper, n, 20) - Rational(1)).abs() < p2(-1));
  }
}

TEST_CASE("monotone modulus error paths") {
  MonotoneRepresentation slow{member_desc("7/3", "1"),
                              member_desc("7/3", "1")};
  CHECK_THROWS_AS(monotone_modulus(slow, 20, 3), BudgetExhausted);

  MonotoneRepresentation crossed{member_desc("3", "1"), member_desc("1", "1")};
  CHECK_THROWS_AS(monotone_modulus(crossed, 4), CertificateViolation);
}

TEST_CASE("hull on closed-form inputs") {
  std::vector<Rational> ones = superadditive_hull(SeqDef::from_expr("1"), 12);
  std::vector<Rational> zeros = superadditive_hull(SeqDef::from_expr("0"), 12);
  std::vector<Rational> shift =
      superadditive_hull(SeqDef::from_expr("n - 1"), 12);
  for (Index n = 1; n <= 12; ++n) {
    CHECK(ones[static_cast<std::size_t>(n - 1)] ==
          Rational(static_cast<long>(n)));
    CHECK(zeros[static_cast<std::size_t>(n - 1)] == Rational(0));
    CHECK(shift[static_cast<std::size_t>(n - 1)] ==
          Rational(static_cast<long>(n - 1)));
  }
}

TEST_CASE("hull matches the reference DP and its contract") {
  const std::vector<std::string> fixtures = {
      "1",           "0",
      "n - 1",       "floor(3 * n / 2)",
      "n * n",       "2 * n + 5",
      "pow2neg(n)",  "0 - n",
      "max(0 - 1, 2 - n)", "floor(n * n / 3)"};
  for (const std::string& text : fixtures) {
    CAPTURE(text);
    SeqDef base = SeqDef::from_expr(text);
    const Index N = 200;
    std::vector<Rational> h = superadditive_hull(base, N);
    std::vector<Rational> ref = oracle_hull(base, N);
    bool input_superadditive = true;
    for (Index n = 1; n <= N; ++n) {
      CHECK(h[static_cast<std::size_t>(n - 1)] ==
            ref[static_cast<std::size_t>(n)]);
      CHECK(h[static_cast<std::size_t>(n - 1)] >= base(n));
      for (Index l = 1; l + l <= n; ++l) {
        CHECK(h[static_cast<std::size_t>(n - 1)] >=
              h[static_cast<std::size_t>(l - 1)] +
                  h[static_cast<std::size_t>(n - l - 1)]);
        if (base(n) < base(l) + base(n - l)) input_superadditive = false;
      }
    }
    if (input_superadditive) {
      for (Index n = 1; n <= N; ++n) {
        CHECK(h[static_cast<std::size_t>(n - 1)] == base(n));
      }
    }
  }
}

TEST_CASE("hull extends incrementally to the same values") {
  SeqDef base = SeqDef::from_expr("floor(3 * n / 2)");
  SuperadditiveHull grown(base);
  CHECK(grown.at(5) == Rational(7));
  CHECK(grown.at(2) == Rational(3));   // cached prefix
  CHECK(grown.at(40) == grown.at(40));
  std::vector<Rational> batch = superadditive_hull(base, 40);
  for (Index n = 1; n <= 40; ++n) {
    CHECK(grown.at(n) == batch[static_cast<std::size_t>(n - 1)]);
  }
  CHECK_THROWS_AS(grown.at(0), PreconditionViolation);
}

TEST_CASE("rational-pair modulus search") {
  SeqDef zero = SeqDef::from_expr("0");
  for (Precision M : {0, 5, 30}) {
    ModulusSearch s = fekete_search_rational(zero, zero, M);
    CHECK(s.n0 == 1);
    CHECK(s.kappa == 1);
  }

  ModulusSearch s =
      fekete_search_rational(SeqDef::from_expr("floor(3 * n / 2)"),
                             SeqDef::from_expr("3/2 + 1/n"), 1);
  CHECK(s.n0 == 7);
  CHECK(s.kappa == 49);
  SeqDef a = SeqDef::from_expr("floor(3 * n / 2)");
  for (Index n = s.kappa; n <= s.kappa + 100; ++n) {
    CHECK((rat(3, 2) - a(n) / Rational(static_cast<long>(n))).abs() < p2(-1));
  }

  ModulusSearch t = fekete_search_rational(SeqDef::from_expr("n - 1"),
                                           SeqDef::from_expr("1 + 1/n"), 2);
  CHECK(t.n0 == 17);
  CHECK(t.kappa == 289);
  for (Index n = t.kappa; n <= t.kappa + 100; ++n) {
    CHECK(rat(1, static_cast<long>(n)) < p2(-2));
  }
}

TEST_CASE("rational-pair search rejects negatives and respects the budget") {
  CHECK_THROWS_AS(fekete_search_rational(SeqDef::from_expr("0 - 1"),
                                         SeqDef::from_expr("1"), 2),
                  CertificateViolation);
  CHECK_THROWS_AS(
      fekete_search_rational(SeqDef::from_expr("floor(3 * n / 2)"),
                             SeqDef::from_expr("3/2 + 1/n"), 8, 10),
      BudgetExhausted);
}

TEST_CASE("additive-pipeline envelopes") {
  SeqDef upper = fekete_upper_envelope(member_desc("ceil(3 * n / 2)", "1"));
  CHECK(upper(1) == rat(5, 2));
  CHECK(upper(2) == rat(13, 8));
  CHECK(upper(3) == rat(13, 8));
  CHECK(upper(4) == rat(97, 64));
  Rational prev = upper(1);
  for (Index n = 2; n <= 60; ++n) {
    CHECK(upper(n) <= prev);
    CHECK(upper(n) > rat(3, 2));
    prev = upper(n);
  }

  SeqDef base = fekete_lower_base(member_desc("floor(3 * n / 2)", "1"));
  CHECK(base(1) == rat(1, 2));
  CHECK(base(3) == rat(31, 8));
  CHECK(fekete_lower_base(member_desc("0", "1"))(5) == Rational(0));
}

TEST_CASE("additive-pipeline modulus search against the reference sweep") {
  AdditiveRepresentation super{AdditiveKind::superadditive,
                               member_desc("floor(3 * n / 2)", "1")};
  AdditiveRepresentation sub{AdditiveKind::subadditive,
                             member_desc("ceil(3 * n / 2)", "1")};

  ModulusSearch m1 = fekete_search(super, sub, 1);
  CHECK(m1.n0 == 7);
  CHECK(m1.kappa == 49);

  for (Precision M = 1; M <= 5; ++M) {
    ModulusSearch s = fekete_search(super, sub, M);
    const Index expect =
        oracle_pipeline_n0(SeqDef::from_expr("floor(3 * n / 2)"),
                           SeqDef::from_expr("ceil(3 * n / 2)"), M, 2000);
    REQUIRE(expect != 0);
    CHECK(s.n0 == expect);
    CHECK(s.kappa == expect * expect);

    SeqDef a = SeqDef::from_expr("floor(3 * n / 2)");
    for (Index n = s.kappa; n <= s.kappa + 100; ++n) {
      CHECK((rat(3, 2) - a(n) / Rational(static_cast<long>(n))).abs() <
            p2(static_cast<long>(-M)));
    }
  }
}

TEST_CASE("additive pipeline on an exactly additive sequence") {
  AdditiveRepresentation super{AdditiveKind::superadditive,
                               member_desc("2 * n / 3", "1")};
  AdditiveRepresentation sub{AdditiveKind::subadditive,
                             member_desc("2 * n / 3", "1")};
  for (Precision M : {0, 2, 4}) {
    ModulusSearch s = fekete_search(super, sub, M);
    const Index expect = oracle_pipeline_n0(SeqDef::from_expr("2 * n / 3"),
                                            SeqDef::from_expr("2 * n / 3"),
                                            M, 2000);
    CHECK(s.n0 == expect);
    // The members are exactly 2/3 per index, so the certified bound is slack.
    SeqDef a = SeqDef::from_expr("2 * n / 3");
    CHECK(a(s.kappa) / Rational(static_cast<long>(s.kappa)) == rat(2, 3));
  }
}

TEST_CASE("additive pipeline preconditions and budget") {
  AdditiveRepresentation super{AdditiveKind::superadditive,
                               member_desc("floor(3 * n / 2)", "1")};
  AdditiveRepresentation sub{AdditiveKind::subadditive,
                             member_desc("ceil(3 * n / 2)", "1")};
  CHECK_THROWS_AS(fekete_search(sub, sub, 2), PreconditionViolation);
  CHECK_THROWS_AS(fekete_search(super, super, 2), PreconditionViolation);
  CHECK_THROWS_AS(fekete_search(super, sub, 8, 100), BudgetExhausted);
}
