#include "fekete/machines.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fekete/errors.hpp"

namespace fekete {

namespace {

// Jump targets decoded from an index stream are clamped here first so the
// accumulators stay inside 64 bits; the final clamp to the program length
// happens once the length is known.
constexpr unsigned long long kRawTargetCap = 1ULL << 40;

struct MachineState {
  Index pc = 0;
  long long c0 = 0;
  long long c1 = 0;
  Index steps = 0;
  bool halted = false;
};

// Runs until the machine halts or has executed step_cap steps in total.
// Counting the halting step itself makes every halt step >= 1, including the
// implicit HALT past the end of the program.
void advance(const Program& p, MachineState& st, Index step_cap, Index& ticks) {
  const Index len = static_cast<Index>(p.instructions.size());
  while (!st.halted && st.steps < step_cap) {
    ++st.steps;
    ++ticks;
    if (st.pc >= len) {
      st.halted = true;
      break;
    }
    const Instruction& ins = p.instructions[static_cast<std::size_t>(st.pc)];
    switch (ins.op) {
      case Op::inc:
        ++(ins.reg == 0 ? st.c0 : st.c1);
        ++st.pc;
        break;
      case Op::halt:
        st.halted = true;
        break;
      case Op::decjz: {
        long long& c = ins.reg == 0 ? st.c0 : st.c1;
        if (c == 0) {
          st.pc = ins.target;
        } else {
          --c;
          ++st.pc;
        }
        break;
      }
    }
  }
}

void check_register(int reg) {
  if (reg != 0 && reg != 1)
    throw PreconditionViolation("register must be 0 or 1, got " +
                                std::to_string(reg));
}

}  // namespace

Program decode_program(Index index) {
  if (index < 1)
    throw PreconditionViolation("program index must be >= 1, got " +
                                std::to_string(index));
  std::vector<int> tokens;
  unsigned long long n = static_cast<unsigned long long>(index - 1);
  while (n > 0) {
    int d = static_cast<int>(n % 6);
    if (d == 0) d = 6;
    tokens.push_back(d - 1);
    n = (n - static_cast<unsigned long long>(d)) / 6;
  }

  Program out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const int t = tokens[i++];
    if (t == 0 || t == 1) {
      out.instructions.push_back({Op::inc, t, 0});
    } else if (t == 2 || t == 5) {
      out.instructions.push_back({Op::halt, 0, 0});
    } else {
      unsigned long long target = 0;
      unsigned long long place = 1;
      while (i < tokens.size() && tokens[i] != 5) {
        target += static_cast<unsigned long long>(tokens[i++]) * place;
        if (target > kRawTargetCap) target = kRawTargetCap;
        if (place <= kRawTargetCap) place *= 5;
      }
      if (i < tokens.size()) ++i;  // the terminating 5
      out.instructions.push_back(
          {Op::decjz, t - 3, static_cast<Index>(target)});
    }
  }
  if (out.instructions.empty()) out.instructions.push_back({Op::halt, 0, 0});

  const Index len = static_cast<Index>(out.instructions.size());
  for (Instruction& ins : out.instructions)
    if (ins.op == Op::decjz && ins.target > len) ins.target = len;
  return out;
}

Index encode_program(const Program& p) {
  if (p.instructions.empty())
    throw PreconditionViolation("cannot encode an empty program");
  const std::size_t count = p.instructions.size();
  std::vector<int> tokens;
  for (std::size_t idx = 0; idx < count; ++idx) {
    const Instruction& ins = p.instructions[idx];
    switch (ins.op) {
      case Op::inc:
        check_register(ins.reg);
        tokens.push_back(ins.reg);
        break;
      case Op::halt:
        tokens.push_back(2);
        break;
      case Op::decjz: {
        check_register(ins.reg);
        if (ins.target < 0 || ins.target > static_cast<Index>(count))
          throw PreconditionViolation(
              "jump target " + std::to_string(ins.target) +
              " outside 0.." + std::to_string(count));
        tokens.push_back(3 + ins.reg);
        unsigned long long t = static_cast<unsigned long long>(ins.target);
        while (t > 0) {
          tokens.push_back(static_cast<int>(t % 5));
          t /= 5;
        }
        if (idx + 1 < count) tokens.push_back(5);
        break;
      }
    }
  }

  unsigned __int128 value = 0;
  unsigned __int128 place = 1;
  for (const int tok : tokens) {
    value += static_cast<unsigned __int128>(tok + 1) * place;
    if (value > static_cast<unsigned __int128>(LLONG_MAX) - 1)
      throw TooLarge("program index does not fit a 63-bit integer");
    place *= 6;
  }
  return static_cast<Index>(value) + 1;
}

std::string program_listing(const Program& p) {
  std::string out;
  for (const Instruction& ins : p.instructions) {
    switch (ins.op) {
      case Op::inc:
        out += "INC " + std::to_string(ins.reg);
        break;
      case Op::halt:
        out += "HALT";
        break;
      case Op::decjz:
        out += "DECJZ " + std::to_string(ins.reg) + " " +
               std::to_string(ins.target);
        break;
    }
    out += '\n';
  }
  return out;
}

namespace {

struct Word {
  std::size_t offset;
  std::string text;
};

int parse_register(const Word& w) {
  if (w.text == "0") return 0;
  if (w.text == "1") return 1;
  throw ParseError("register must be 0 or 1", w.offset);
}

Index parse_target(const Word& w) {
  if (w.text.empty() || w.text.size() > 12)
    throw ParseError("jump target out of range", w.offset);
  for (const char ch : w.text)
    if (ch < '0' || ch > '9')
      throw ParseError("jump target must be a non-negative integer", w.offset);
  return static_cast<Index>(std::stoll(w.text));
}

}  // namespace

Program parse_program_listing(const std::string& text) {
  Program out;
  std::vector<Word> jump_sites;
  std::size_t pos = 0;
  const std::size_t size = text.size();
  while (pos <= size) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = size;

    std::vector<Word> words;
    std::size_t i = pos;
    while (i < eol) {
      while (i < eol && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r'))
        ++i;
      const std::size_t start = i;
      while (i < eol && text[i] != ' ' && text[i] != '\t' && text[i] != '\r')
        ++i;
      if (i > start) words.push_back({start, text.substr(start, i - start)});
    }

    if (!words.empty()) {
      const std::string& op = words[0].text;
      std::size_t expected = 0;
      if (op == "INC") {
        expected = 2;
        if (words.size() < 2) throw ParseError("INC needs a register", eol);
        out.instructions.push_back({Op::inc, parse_register(words[1]), 0});
      } else if (op == "DECJZ") {
        expected = 3;
        if (words.size() < 3)
          throw ParseError("DECJZ needs a register and a jump target", eol);
        out.instructions.push_back(
            {Op::decjz, parse_register(words[1]), parse_target(words[2])});
        jump_sites.push_back(words[2]);
      } else if (op == "HALT") {
        expected = 1;
        out.instructions.push_back({Op::halt, 0, 0});
      } else {
        throw ParseError("unknown instruction '" + op + "'", words[0].offset);
      }
      if (words.size() > expected)
        throw ParseError("unexpected token '" + words[expected].text + "'",
                         words[expected].offset);
    }

    if (eol == size) break;
    pos = eol + 1;
  }

  if (out.instructions.empty())
    throw ParseError("listing holds no instructions", 0);
  const Index len = static_cast<Index>(out.instructions.size());
  for (const Word& site : jump_sites) {
    const Index target = static_cast<Index>(std::stoll(site.text));
    if (target > len)
      throw ParseError("jump target " + site.text + " exceeds program length " +
                           std::to_string(len),
                       site.offset);
  }
  return out;
}

RunResult run_program(const Program& p, Index max_steps) {
  if (max_steps < 0)
    throw PreconditionViolation("max_steps must be >= 0, got " +
                                std::to_string(max_steps));
  MachineState st;
  Index ticks = 0;
  advance(p, st, max_steps, ticks);
  if (st.halted) return {true, st.steps};
  return {false, max_steps};
}

RunResult run(Index program_index, Index max_steps) {
  return run_program(decode_program(program_index), max_steps);
}

Index halting_steps_l(Index n, Index m) {
  if (n < 1 || m < 1)
    throw PreconditionViolation("halting_steps_l needs n >= 1 and m >= 1");
  const RunResult r = run(n, m);
  if (r.halted && r.steps < m) return r.steps;
  return m;
}

namespace {

constexpr unsigned long long kNoCell = ~0ULL;

// Dovetail cell number of (program p, step allowance s), matching
// cantor_pair(p, s); kNoCell when the value leaves the 63-bit index range,
// which only happens for cells no bounded scan can reach anyway.
unsigned long long cell_index(Index p, Index s) {
  const unsigned __int128 d = static_cast<unsigned __int128>(p) +
                              static_cast<unsigned __int128>(s) - 2;
  const unsigned __int128 k = d * (d + 1) / 2 + static_cast<unsigned __int128>(s);
  if (k > static_cast<unsigned __int128>(LLONG_MAX)) return kNoCell;
  return static_cast<unsigned long long>(k);
}

}  // namespace

EnumeratedSet enumerate_re(Index count, Index tick_budget) {
  if (count < 0)
    throw PreconditionViolation("enumerate_re: count must be >= 0");
  if (tick_budget < 0)
    throw PreconditionViolation("enumerate_re: tick budget must be >= 0");

  EnumeratedSet out;
  out.tick_budget = tick_budget;
  if (count == 0) return out;

  struct ProgMemo {
    Program prog;
    MachineState st;
  };
  std::unordered_map<Index, ProgMemo> memo;

  enum class Kind : unsigned char { probe, emit };
  struct Event {
    unsigned long long cell;
    Index p;
    Index s;
    Kind kind;
  };
  const auto later = [](const Event& a, const Event& b) {
    return a.cell > b.cell;
  };
  std::priority_queue<Event, std::vector<Event>, decltype(later)> agenda(later);
  const auto schedule = [&agenda](unsigned long long cell, Index p, Index s,
                                  Kind kind) {
    if (cell != kNoCell) agenda.push({cell, p, s, kind});
  };

  Index ticks = 0;
  Index next_entrant = 1;
  schedule(cell_index(1, 1), 1, 1, Kind::probe);

  // Events are processed in cell order, so emissions happen at exactly the
  // cells where the plain nested scan would emit.  A probe at (p, s) owns
  // every cell of p up to the explored depth; it runs the machine ahead to
  // max(s, twice the explored depth) and books either the emission cell
  // (p, halt step) or the next probe at the frontier.
  while (!agenda.empty()) {
    const Event ev = agenda.top();
    agenda.pop();

    if (ev.kind == Kind::emit) {
      out.programs.push_back(ev.p);
      if (static_cast<Index>(out.programs.size()) == count) {
        out.ticks_used = ticks;
        return out;
      }
      continue;
    }

    if (ev.p == next_entrant) {
      ++next_entrant;
      schedule(cell_index(next_entrant, 1), next_entrant, 1, Kind::probe);
    }

    if (ticks >= tick_budget) break;

    auto [it, fresh] = memo.try_emplace(ev.p);
    ProgMemo& pm = it->second;
    if (fresh) pm.prog = decode_program(ev.p);

    Index target_depth = std::max(
        ev.s, pm.st.steps <= (LLONG_MAX >> 1) ? 2 * pm.st.steps : pm.st.steps);
    const Index remaining = tick_budget - ticks;
    if (target_depth - pm.st.steps > remaining)
      target_depth = pm.st.steps + remaining;

    advance(pm.prog, pm.st, target_depth, ticks);

    if (pm.st.halted) {
      const Index h = pm.st.steps;
      if (h <= ev.s) {
        out.programs.push_back(ev.p);
        if (static_cast<Index>(out.programs.size()) == count) {
          out.ticks_used = ticks;
          return out;
        }
      } else {
        schedule(cell_index(ev.p, h), ev.p, h, Kind::emit);
      }
    } else {
      schedule(cell_index(ev.p, pm.st.steps + 1), ev.p, pm.st.steps + 1,
               Kind::probe);
    }
  }

  out.ticks_used = ticks;
  throw BudgetExhausted("enumerate_re: found " +
                        std::to_string(out.programs.size()) + " of " +
                        std::to_string(count) + " programs within " +
                        std::to_string(tick_budget) + " ticks");
}

namespace {

void check_prefix_length(Index n, const EnumeratedSet& e, const char* who) {
  if (n < 0)
    throw PreconditionViolation(std::string(who) + ": prefix length must be >= 0");
  if (n > static_cast<Index>(e.programs.size()))
    throw InsufficientEnumeration(
        std::string(who) + ": asked for " + std::to_string(n) +
        " elements, enumeration holds " + std::to_string(e.programs.size()));
}

}  // namespace

Rational specker_term(Index n, const EnumeratedSet& e) {
  check_prefix_length(n, e, "specker_term");
  Rational sum;
  for (Index j = 0; j < n; ++j)
    sum += Rational::pow2(-static_cast<long>(e.programs[static_cast<std::size_t>(j)]));
  return sum;
}

std::vector<Rational> specker_prefix(const EnumeratedSet& e, Index count) {
  check_prefix_length(count, e, "specker_prefix");
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(count));
  Rational sum;
  for (Index j = 0; j < count; ++j) {
    sum += Rational::pow2(-static_cast<long>(e.programs[static_cast<std::size_t>(j)]));
    out.push_back(sum);
  }
  return out;
}

Rational t15_family(Index m, Index n, const EnumeratedSet& e) {
  if (m < 1)
    throw PreconditionViolation("t15_family: program index must be >= 1");
  check_prefix_length(n, e, "t15_family");
  for (Index j = 0; j < n; ++j)
    if (e.programs[static_cast<std::size_t>(j)] == m) return Rational(1);
  return Rational(0);
}

Rational t17_family(Index m, Index n, const EnumeratedSet& e) {
  return Rational(static_cast<long>(n)) * t15_family(m, n, e);
}

FooSequences foo_sequences(Index n_limit) {
  if (n_limit < 1)
    throw PreconditionViolation("foo_sequences: n_limit must be >= 1");

  FooSequences f;
  f.n_limit = n_limit;

  const auto check_n = [n_limit](Index n) {
    if (n < 1 || n > n_limit)
      throw PreconditionViolation("foo sequences: member index " +
                                  std::to_string(n) + " outside 1.." +
                                  std::to_string(n_limit));
  };

  DoubleSeqDef dseq;
  dseq.fn = [check_n](Index n, Index m) {
    check_n(n);
    if (m < 1)
      throw PreconditionViolation("foo sequences: stage must be >= 1");
    return Rational(2) - Rational::pow2(-static_cast<long>(halting_steps_l(n, m)));
  };
  Json spec;
  spec["kind"] = "builtin";
  spec["name"] = "foo_x";
  spec["params"]["n_limit"] = n_limit;
  dseq.spec = spec;

  f.x.dseq = dseq;
  f.x.modulus2 = Modulus2::from_expr("M + 1");

  // The x interval is scaled by 1 / (2n(n+1)) <= 1/4, so asking x for
  // precision M - 2 already certifies w to 2^-M.
  const SeqStandardDescription x = f.x;
  f.w = [x, check_n](Index n, Precision M) {
    check_n(n);
    if (M < 0)
      throw PreconditionViolation("foo sequences: precision must be >= 0");
    const Precision mx = M >= 2 ? M - 2 : 0;
    const Interval xi = approx_member_interval(x, n, mx);
    const Rational nq(static_cast<long>(n));
    const Rational scale = Rational(1) / (Rational(2) * nq * (nq + Rational(1)));
    const Rational base = Rational(1) - Rational(1) / nq;
    return Interval{base + xi.lo * scale, base + xi.hi * scale};
  };

  const auto w = f.w;
  f.a = [w](Index n, Precision M) {
    if (M < 0)
      throw PreconditionViolation("foo sequences: precision must be >= 0");
    Precision shift = 0;
    while (n >= 1 && (Index{1} << shift) < n) ++shift;
    const Interval wi = w(n, M + shift);
    const Rational nq(static_cast<long>(n));
    return Interval{wi.lo * nq, wi.hi * nq};
  };

  return f;
}

NonuniformityReport nonuniformity_report(const EnumeratedSet& e) {
  if (e.programs.empty())
    throw InsufficientEnumeration(
        "nonuniformity report needs a non-empty enumeration");

  NonuniformityReport rep;
  rep.position = static_cast<Index>(e.programs.size());
  rep.witness = e.programs.back();

  Index cap = 64;
  for (;;) {
    const RunResult r = run(rep.witness, cap);
    if (r.halted) {
      rep.halt_step = r.steps;
      break;
    }
    if (cap > (Index{1} << 40))
      throw CertificateViolation("enumerated program " +
                                 std::to_string(rep.witness) +
                                 " did not halt on re-check");
    cap *= 2;
  }

  for (Index p = 1; p < rep.position; p *= 2) rep.refuted_prefixes.push_back(p);
  if (rep.position > 1 && rep.refuted_prefixes.back() != rep.position - 1)
    rep.refuted_prefixes.push_back(rep.position - 1);

  // Each listed prefix would guess a limit of 0 for the witness column; the
  // full enumeration shows the limit is 1.  Both facts are re-checked here
  // so a report is never emitted for a non-witness.
  for (const Index p : rep.refuted_prefixes)
    if (t15_family(rep.witness, p, e) != Rational(0))
      throw CertificateViolation(
          "witness appears before its recorded enumeration slot");
  if (t15_family(rep.witness, rep.position, e) != Rational(1))
    throw CertificateViolation("witness missing from its enumeration slot");
  return rep;
}

}  // namespace fekete
