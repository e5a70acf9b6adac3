#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fekete/seq.hpp"

namespace fekete {

// Two-counter register machine.  Three instructions; both counters start at
// zero; jump targets are 0-based instruction indices, and the index one past
// the end acts as an implicit HALT so decoded programs can never step out of
// bounds.
enum class Op : unsigned char { inc, decjz, halt };

struct Instruction {
  Op op = Op::halt;
  int reg = 0;       // 0 or 1; meaningful for inc and decjz
  Index target = 0;  // meaningful for decjz
  bool operator==(const Instruction&) const = default;
};

struct Program {
  std::vector<Instruction> instructions;
  bool operator==(const Program&) const = default;
};

// Goedel numbering.  An index k >= 1 maps to a token stream via bijective
// base-6 (little-endian: n = k - 1, repeatedly d = n mod 6 with 0 read as 6,
// token = d - 1, n = (n - d) / 6).  Tokens parse as:
//   0 -> INC 0        1 -> INC 1        2 -> HALT
//   3 -> DECJZ 0 t    4 -> DECJZ 1 t    5 -> HALT (stray at opcode position)
// After a 3 or 4, tokens 0..4 are little-endian base-5 digits of the jump
// target, terminated by a 5 or by the end of the stream.  The empty stream
// (k = 1) decodes to a single HALT, and targets clamp to the program length,
// so decoding is total.  encode_program is a canonical right inverse:
// decode_program(encode_program(p)) == p for every program.
Program decode_program(Index index);
Index encode_program(const Program& p);

// Listing format: one instruction per line, "INC r", "DECJZ r t", "HALT".
std::string program_listing(const Program& p);
Program parse_program_listing(const std::string& text);

struct RunResult {
  bool halted = false;
  Index steps = 0;  // executed steps when halted (the HALT step included);
                    // equals max_steps when still running
};

RunResult run_program(const Program& p, Index max_steps);
RunResult run(Index program_index, Index max_steps);

// l(n, m) = halt step of program n when that is < m, else m.  Non-halting
// programs yield m for every m; halting ones pin to their halt step once m
// passes it.
Index halting_steps_l(Index n, Index m);

// Prefix of the halting set in dovetail order: scanning cells k = 1, 2, ...
// with (p, s) = cantor_unpair(k), program p is emitted at the first cell
// whose step allowance s covers its halt step.  The scan is realized
// event-driven with per-program memoized machine states and geometrically
// growing probe depths, which emits exactly the same list as the cell-by-
// cell loop while executing far fewer interpreter steps.  Ticks count
// interpreter steps actually executed.
struct EnumeratedSet {
  std::vector<Index> programs;
  Index tick_budget = 0;
  Index ticks_used = 0;
};

EnumeratedSet enumerate_re(Index count, Index tick_budget);

// Partial sums sum_{p in A_n} 2^-p over the first n enumerated indices:
// non-decreasing, bounded by 1, and with no computable modulus when the
// enumerated set is genuinely non-recursive (at desk scale this is only
// illustrated, never asserted).
Rational specker_term(Index n, const EnumeratedSet& e);
std::vector<Rational> specker_prefix(const EnumeratedSet& e, Index count);

// Indicator family: 1 when m is among the first n enumerated programs, else
// 0.  Non-decreasing in n; the limit in n is the halting indicator of m
// relative to the enumerated universe.
Rational t15_family(Index m, Index n, const EnumeratedSet& e);

// n times the indicator: non-negative and superadditive in n for each m.
Rational t17_family(Index m, Index n, const EnumeratedSet& e);

// Rational-valued sequences with computable members but no exact rational
// evaluator: x_n = lim_m (2 - 2^-l(n, m)) equals 2 - 2^-h for programs
// halting at step h and 2 for the rest.  The x description is exact per
// stage; w and a only admit certified intervals, since producing their
// values as exact rationals would decide halting.
//   w_n = 1 - 1/n + x_n / (2n(n+1)),  a_n = n * w_n.
struct FooSequences {
  Index n_limit = 0;
  SeqStandardDescription x;  // dseq(n, m) = 2 - 2^-l(n, m), kappa(n, M) = M+1
  std::function<Interval(Index, Precision)> w;  // radius <= 2^-M
  std::function<Interval(Index, Precision)> a;  // radius <= 2^-M
};

FooSequences foo_sequences(Index n_limit);

// Demonstration data: the program whose indicator column flips last in the
// enumeration defeats every guess of its limit formed from a shorter prefix.
// Each listed prefix length P < position sees t15(witness, P) = 0 while the
// true limit is 1.
struct NonuniformityReport {
  Index witness = 0;
  Index position = 0;   // 1-based slot where the witness is enumerated
  Index halt_step = 0;
  std::vector<Index> refuted_prefixes;
};

NonuniformityReport nonuniformity_report(const EnumeratedSet& e);

}  // namespace fekete
