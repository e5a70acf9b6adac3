#include "fekete/cli.hpp"

#include <CLI11.hpp>
#include <gmpxx.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fekete/errors.hpp"
#include "fekete/fekete.hpp"
#include "fekete/json_io.hpp"
#include "fekete/machines.hpp"
#include "fekete/shannon.hpp"
#include "fekete/transforms.hpp"

namespace fekete {
namespace {

constexpr const char* kSchemaTag = "fekete-cert/1";
constexpr Index kDefaultTicks = 100000000;

// Windows replayed into certificates: sandwich-style gaps persist under the
// declared monotone contracts, so a stretch past n0 is checkable; limit
// windows start at kappa, where the additive bound takes effect.
constexpr Index kGapWindow = 50;
constexpr Index kLimitWindow = 100;

// Precision used when a command samples values for display rather than
// certifying anything.
constexpr Precision kSamplePrecision = 8;

// Member stage used when a limit window is replayed through approximations
// instead of exact terms.  The fixed radius 2^-4 shrinks by 1/n once the
// member is averaged, so it is negligible against 2^-M for n >= kappa.
constexpr Precision kMemberStage = 4;

struct GlobalOpts {
  Index budget = kDefaultBudget;
  bool table = false;
};

Rational pow2_neg(Precision M) {
  return Rational::pow2(-static_cast<long>(M));
}

// Truncated decimal expansion for table display; JSON payloads never use it.
std::string decimal_string(const Rational& r, int places) {
  mpz_class pow10 = 1;
  for (int i = 0; i < places; ++i) pow10 *= 10;
  mpz_class num = r.num();
  const bool negative = num < 0;
  if (negative) num = -num;
  const mpz_class scaled = num * pow10 / r.den();
  std::string frac = mpz_class(scaled % pow10).get_str();
  frac.insert(frac.begin(), static_cast<std::size_t>(places) - frac.size(),
              '0');
  return (negative ? "-" : "") + mpz_class(scaled / pow10).get_str() + "." +
         frac;
}

bool is_rational_json(const Json& v) {
  return v.is_object() && v.size() == 2 && v.contains("num") &&
         v.contains("den") && v["num"].is_string() && v["den"].is_string();
}

void render_rows(const Json& v, const std::string& path, std::ostream& out) {
  if (is_rational_json(v)) {
    const Rational r = rational_from_json(v);
    out << path << " = " << r.to_string() << "  (" << decimal_string(r, 6)
        << " to 6 places)\n";
    return;
  }
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      render_rows(it.value(), path.empty() ? it.key() : path + "." + it.key(),
                  out);
    }
    return;
  }
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      render_rows(v[i], path + "[" + std::to_string(i) + "]", out);
    }
    return;
  }
  if (v.is_string()) {
    out << path << " = " << v.get<std::string>() << "\n";
  } else {
    out << path << " = " << v.dump() << "\n";
  }
}

void print_doc(const Json& doc, const GlobalOpts& g, std::ostream& out) {
  if (g.table) {
    render_rows(doc, "", out);
  } else {
    out << doc.dump(2) << '\n';
  }
}

int emit_error(std::ostream& out, const std::string& code,
               const std::string& message, int rc) {
  Json doc;
  doc["schema"] = kSchemaTag;
  doc["error"] = Json{{"code", code}, {"message", message}};
  out << doc.dump(2) << '\n';
  return rc;
}

Json make_doc(const char* command) {
  Json doc;
  doc["schema"] = kSchemaTag;
  doc["command"] = command;
  return doc;
}

std::string read_input_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw PreconditionViolation("cannot open input file '" + path + "'");
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Json load_json(const std::string& path) {
  const std::string text = read_input_text(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("invalid JSON in '" + path + "': " + e.what(), byte);
  }
}

// A certificate must replay from its own JSON alone; a null anywhere in the
// problem block means some input only exists as an in-process closure.
void require_serializable(const Json& j, const char* what) {
  if (j.is_null()) {
    throw PreconditionViolation(std::string(what) +
                                " has no serializable spec");
  }
  if (j.is_object() || j.is_array()) {
    for (const auto& item : j.items()) {
      require_serializable(item.value(), what);
    }
  }
}

Index int_field(const Json& j, const char* key, const char* what) {
  const Json& v = detail::require_field(j, key, what);
  if (!v.is_number_integer()) {
    throw SchemaError(std::string(what) + "." + key + " must be an integer");
  }
  return v.get<Index>();
}

SeqStandardDescription ssd_from_exprs(const std::string& dseq_text,
                                      const std::string& kappa_text,
                                      Index budget) {
  SeqStandardDescription d;
  d.dseq = DoubleSeqDef::from_expr(dseq_text);
  d.modulus2 = Modulus2::from_expr(kappa_text, budget);
  return d;
}

ZWKind parse_zw_kind(const std::string& s) {
  if (s == "lower") return ZWKind::lower;
  if (s == "upper") return ZWKind::upper;
  throw PreconditionViolation("--kind must be lower or upper, got '" + s +
                              "'");
}

AdditiveKind parse_additive_kind(const std::string& s) {
  if (s == "super" || s == "superadditive") return AdditiveKind::superadditive;
  if (s == "sub" || s == "subadditive") return AdditiveKind::subadditive;
  throw PreconditionViolation("--kind must be super or sub, got '" + s + "'");
}

// Replay pieces.  Each one checks inequalities with exact arithmetic and
// reports false on the first failure; nothing here searches.

bool gap_window_holds(const SeqDef& lower, const SeqDef& upper, Precision M,
                      Index lo, Index hi) {
  const Rational radius = pow2_neg(M);
  for (Index n = lo; n <= hi; ++n) {
    const Rational l = lower(n);
    const Rational u = upper(n);
    if (u < l || !(u - l < radius)) return false;
  }
  return true;
}

bool rational_stop_holds(const SeqDef& a, const SeqDef& converse, Precision M,
                         Index n0) {
  const Rational half = pow2_neg(M + 1);
  const Rational nn(static_cast<long>(n0));
  const Rational cn = converse(n0);
  return cn / nn < half && cn - half < a(n0) / nn;
}

bool pipeline_stop_holds(const AdditiveRepresentation& super,
                         const AdditiveRepresentation& sub, Precision M,
                         Index n0) {
  SeqDef upper = fekete_upper_envelope(sub.desc);
  SuperadditiveHull hull(fekete_lower_base(super.desc));
  const Rational half = pow2_neg(M + 1);
  const Rational nn(static_cast<long>(n0));
  const Rational ln = upper(n0);
  return ln / nn < half && ln - half < hull.at(n0) / nn;
}

bool limit_window_exact(const SeqDef& a, const Rational& r, Precision M,
                        Index lo, Index hi) {
  const Rational radius = pow2_neg(M);
  for (Index n = lo; n <= hi; ++n) {
    const Rational q = a(n) / Rational(static_cast<long>(n));
    if (!((q - r).abs() < radius)) return false;
  }
  return true;
}

bool limit_window_members(const SeqStandardDescription& d, const Rational& r,
                          Precision M, Index lo, Index hi) {
  const Rational radius = pow2_neg(M);
  for (Index n = lo; n <= hi; ++n) {
    const Interval iv = approx_member_interval(d, n, kMemberStage);
    const Rational nn(static_cast<long>(n));
    const Interval scaled{iv.lo / nn, iv.hi / nn};
    if (!scaled.inside_open(r - radius, r + radius)) return false;
  }
  return true;
}

// Re-checks the inequalities a certificate claims over its stored window.
// Everything is taken from the document itself: specs are reloaded, the
// window endpoints are not recomputed, and no search is repeated.
bool replay_certificate(const Json& cert) {
  const char* what = "certificate";
  const Json& variant_field = detail::require_field(cert, "variant", what);
  if (!variant_field.is_string()) {
    throw SchemaError("certificate.variant must be a string");
  }
  const std::string variant = variant_field.get<std::string>();
  const Precision M = int_field(cert, "M", what);
  const Index n0 = int_field(cert, "n0", what);
  const Index budget = int_field(cert, "budget", what);
  const Json& window = detail::require_field(cert, "checked_window", what);
  if (!window.is_array() || window.size() != 2 ||
      !window[0].is_number_integer() || !window[1].is_number_integer()) {
    throw SchemaError("certificate.checked_window must be [lo, hi]");
  }
  const Index lo = window[0].get<Index>();
  const Index hi = window[1].get<Index>();
  if (lo < 1 || hi < lo) {
    throw SchemaError("certificate.checked_window is not a valid range");
  }
  const Index kappa = int_field(cert, "kappa", what);
  const Json& problem = detail::require_field(cert, "problem", what);

  // The window has to attest the indices in the headline, not just any
  // range that happens to satisfy the inequality: n0 anchors the window and
  // kappa is tied to n0 by the variant's construction.  Division instead of
  // n0 * n0 keeps a forged document from overflowing the comparison.
  const bool kappa_is_square =
      n0 >= 1 && kappa / n0 == n0 && kappa % n0 == 0;

  if (variant == "sandwich") {
    if (kappa != n0 || lo != n0) return false;
    const SeqDef lower =
        seqdef_from_json(detail::require_field(problem, "lower", what), budget);
    const SeqDef upper =
        seqdef_from_json(detail::require_field(problem, "upper", what), budget);
    return gap_window_holds(lower, upper, M, lo, hi);
  }
  if (variant == "monotone") {
    if (kappa != n0 || lo != n0) return false;
    const MonotoneRepresentation w = monotone_from_json(
        detail::require_field(problem, "monotone", what), budget);
    return gap_window_holds(monotone_lower_envelope(w.lower),
                            monotone_upper_envelope(w.upper), M, lo, hi);
  }
  if (variant == "fekete-rational") {
    if (!kappa_is_square) return false;
    if (cert.contains("limit") ? lo != kappa : (lo != n0 || hi != n0)) {
      return false;
    }
    const SeqDef a =
        seqdef_from_json(detail::require_field(problem, "a", what), budget);
    const SeqDef converse = seqdef_from_json(
        detail::require_field(problem, "converse", what), budget);
    if (!rational_stop_holds(a, converse, M, n0)) return false;
    if (cert.contains("limit")) {
      const Rational r = rational_from_json(cert["limit"]);
      return limit_window_exact(a, r, M, lo, hi);
    }
    return true;
  }
  if (variant == "fekete") {
    if (!kappa_is_square) return false;
    if (cert.contains("limit") ? lo != kappa : (lo != n0 || hi != n0)) {
      return false;
    }
    const AdditiveRepresentation super = additive_from_json(
        detail::require_field(problem, "super", what), budget);
    const AdditiveRepresentation sub = additive_from_json(
        detail::require_field(problem, "sub", what), budget);
    if (!pipeline_stop_holds(super, sub, M, n0)) return false;
    if (cert.contains("limit")) {
      const Rational r = rational_from_json(cert["limit"]);
      return limit_window_members(super.desc, r, M, lo, hi);
    }
    return true;
  }
  throw SchemaError("unknown certificate variant '" + variant + "'");
}

Json new_certificate(const char* variant, Precision M, Index budget,
                     const ModulusSearch& ms) {
  Json cert = make_doc("modulus");
  cert["variant"] = variant;
  cert["M"] = M;
  cert["budget"] = budget;
  cert["n0"] = ms.n0;
  cert["kappa"] = ms.kappa;
  return cert;
}

int finish_certificate(Json& cert, const GlobalOpts& g, std::ostream& out) {
  require_serializable(cert["problem"], "certificate problem");
  const bool ok = replay_certificate(cert);
  cert["verified"] = ok;
  print_doc(cert, g, out);
  return ok ? 0 : 4;
}

// Command runners.  Each prints exactly one document and returns the exit
// code; thrown errors are mapped by the caller.

int cmd_limit(const std::string& expr_text, const std::string& kind_text,
              Index terms, const GlobalOpts& g, std::ostream& out) {
  const SeqDef a = SeqDef::from_expr(expr_text);
  const AdditiveKind kind = parse_additive_kind(kind_text);
  const BoundReport rep = running_bound(a, kind, terms);
  Json doc = make_doc("limit");
  doc["expr"] = seqdef_to_json(a);
  doc["kind"] = kind == AdditiveKind::superadditive ? "super" : "sub";
  doc["terms"] = terms;
  doc["prefix_length"] = rep.prefix_length;
  doc["bound"] = rational_to_json(rep.bound);
  doc["direction"] = rep.direction == BoundDirection::lower_of_limit
                         ? "lower_of_limit"
                         : "upper_of_limit";
  print_doc(doc, g, out);
  return 0;
}

int cmd_modulus_sandwich(const std::string& lower_text,
                         const std::string& upper_text, Precision M,
                         const GlobalOpts& g, std::ostream& out) {
  const SeqDef lower = SeqDef::from_expr(lower_text);
  const SeqDef upper = SeqDef::from_expr(upper_text);
  const ModulusSearch ms = sandwich_search(lower, upper, M, g.budget);
  Json cert = new_certificate("sandwich", M, g.budget, ms);
  cert["problem"] =
      Json{{"lower", seqdef_to_json(lower)}, {"upper", seqdef_to_json(upper)}};
  cert["checked_window"] = Json::array({ms.n0, ms.n0 + kGapWindow});
  return finish_certificate(cert, g, out);
}

int cmd_modulus_monotone(const std::string& in_path,
                         const std::string& lower_dseq,
                         const std::string& lower_kappa,
                         const std::string& upper_dseq,
                         const std::string& upper_kappa, Precision M,
                         const GlobalOpts& g, std::ostream& out) {
  MonotoneRepresentation w;
  if (!in_path.empty()) {
    w = monotone_from_json(load_json(in_path), g.budget);
  } else if (!lower_dseq.empty() && !lower_kappa.empty() &&
             !upper_dseq.empty() && !upper_kappa.empty()) {
    w.lower = ssd_from_exprs(lower_dseq, lower_kappa, g.budget);
    w.upper = ssd_from_exprs(upper_dseq, upper_kappa, g.budget);
  } else {
    throw PreconditionViolation(
        "provide --in or all of --lower-dseq, --lower-kappa, --upper-dseq, "
        "--upper-kappa");
  }
  const ModulusSearch ms = monotone_search(w, M, g.budget);
  Json cert = new_certificate("monotone", M, g.budget, ms);
  cert["problem"] = Json{{"monotone", monotone_to_json(w)}};
  cert["checked_window"] = Json::array({ms.n0, ms.n0 + kGapWindow});
  return finish_certificate(cert, g, out);
}

int cmd_modulus_fekete(const std::string& a_text, const std::string& conv_text,
                       const std::string& in_path,
                       const std::string& super_dseq,
                       const std::string& super_kappa,
                       const std::string& sub_dseq,
                       const std::string& sub_kappa, Precision M,
                       const std::string& limit_text, const GlobalOpts& g,
                       std::ostream& out) {
  const bool rational_mode = !a_text.empty() || !conv_text.empty();
  const bool pipeline_inline = !super_dseq.empty() || !super_kappa.empty() ||
                               !sub_dseq.empty() || !sub_kappa.empty();
  if (rational_mode && (pipeline_inline || !in_path.empty())) {
    throw PreconditionViolation(
        "choose either --a/--converse or a representation pair, not both");
  }

  Json cert;
  ModulusSearch ms;
  if (rational_mode) {
    if (a_text.empty() || conv_text.empty()) {
      throw PreconditionViolation("--a and --converse are both required");
    }
    const SeqDef a = SeqDef::from_expr(a_text);
    const SeqDef converse = SeqDef::from_expr(conv_text);
    ms = fekete_search_rational(a, converse, M, g.budget);
    cert = new_certificate("fekete-rational", M, g.budget, ms);
    cert["problem"] =
        Json{{"a", seqdef_to_json(a)}, {"converse", seqdef_to_json(converse)}};
  } else {
    AdditiveRepresentation super;
    AdditiveRepresentation sub;
    if (!in_path.empty()) {
      const Json doc = load_json(in_path);
      super = additive_from_json(
          detail::require_field(doc, "super", "representation pair"),
          g.budget);
      sub = additive_from_json(
          detail::require_field(doc, "sub", "representation pair"), g.budget);
    } else if (!super_dseq.empty() && !super_kappa.empty() &&
               !sub_dseq.empty() && !sub_kappa.empty()) {
      super.kind = AdditiveKind::superadditive;
      super.desc = ssd_from_exprs(super_dseq, super_kappa, g.budget);
      sub.kind = AdditiveKind::subadditive;
      sub.desc = ssd_from_exprs(sub_dseq, sub_kappa, g.budget);
    } else {
      throw PreconditionViolation(
          "provide --a/--converse, --in, or all of --super-dseq, "
          "--super-kappa, --sub-dseq, --sub-kappa");
    }
    ms = fekete_search(super, sub, M, g.budget);
    cert = new_certificate("fekete", M, g.budget, ms);
    cert["problem"] = Json{{"super", additive_to_json(super)},
                           {"sub", additive_to_json(sub)}};
  }

  if (!limit_text.empty()) {
    cert["limit"] = rational_to_json(Rational::from_string(limit_text));
    cert["checked_window"] = Json::array({ms.kappa, ms.kappa + kLimitWindow});
  } else {
    cert["checked_window"] = Json::array({ms.n0, ms.n0});
  }
  return finish_certificate(cert, g, out);
}

Json member_samples(const SeqStandardDescription& d, Index terms) {
  Json arr = Json::array();
  for (Index n = 1; n <= terms; ++n) {
    arr.push_back(Json{
        {"n", n},
        {"value", rational_to_json(approx_member(d, n, kSamplePrecision))}});
  }
  return arr;
}

Json seq_samples(const SeqDef& s, Index terms) {
  Json arr = Json::array();
  for (Index n = 1; n <= terms; ++n) {
    arr.push_back(Json{{"n", n}, {"value", rational_to_json(s(n))}});
  }
  return arr;
}

int cmd_transform(const std::string& op, const std::string& in_path,
                  const std::string& dseq_text, const std::string& kappa_text,
                  const std::string& kind_text, Index terms,
                  const GlobalOpts& g, std::ostream& out) {
  const bool inline_ok = !dseq_text.empty() && !kappa_text.empty();
  if (in_path.empty() && !inline_ok) {
    throw PreconditionViolation("provide --in or both --dseq and --kappa");
  }

  Json doc = make_doc("transform");
  doc["op"] = op;
  doc["terms"] = terms;

  if (op == "additive-to-zw") {
    AdditiveRepresentation in;
    if (!in_path.empty()) {
      in = additive_from_json(load_json(in_path), g.budget);
    } else {
      in.kind = parse_additive_kind(kind_text);
      in.desc = ssd_from_exprs(dseq_text, kappa_text, g.budget);
    }
    doc["input"] = additive_to_json(in);
    const ZWRepresentation z = additive_to_zw(in);
    doc["output"] = zw_to_json(z);
    doc["samples"] = member_samples(z.desc, terms);
  } else {
    ZWRepresentation in;
    if (!in_path.empty()) {
      in = zw_from_json(load_json(in_path), g.budget);
    } else {
      in.kind = parse_zw_kind(kind_text);
      in.desc = ssd_from_exprs(dseq_text, kappa_text, g.budget);
    }
    doc["input"] = zw_to_json(in);
    if (op == "flatten") {
      const SeqDef flat = zw_flatten(in);
      doc["output"] = seqdef_to_json(flat);
      doc["samples"] = seq_samples(flat, terms);
    } else {
      const AdditiveRepresentation a = op == "zw-to-super"
                                           ? zw_to_superadditive(in)
                                           : zw_to_subadditive(in);
      doc["output"] = additive_to_json(a);
      doc["samples"] = member_samples(a.desc, terms);
    }
  }
  print_doc(doc, g, out);
  return 0;
}

int cmd_hull(const std::string& expr_text, Index terms, const GlobalOpts& g,
             std::ostream& out) {
  const SeqDef base = SeqDef::from_expr(expr_text);
  const std::vector<Rational> values = superadditive_hull(base, terms);
  Json doc = make_doc("hull");
  doc["expr"] = seqdef_to_json(base);
  doc["terms"] = terms;
  Json arr = Json::array();
  for (const Rational& v : values) arr.push_back(rational_to_json(v));
  doc["values"] = arr;
  print_doc(doc, g, out);
  return 0;
}

int cmd_demo_specker(Index count, Index ticks, const GlobalOpts& g,
                     std::ostream& out) {
  const EnumeratedSet e = enumerate_re(count, ticks);
  const std::vector<Rational> prefix = specker_prefix(e, count);
  Json doc = make_doc("demo");
  doc["demo"] = "specker";
  doc["count"] = count;
  doc["tick_budget"] = e.tick_budget;
  doc["ticks_used"] = e.ticks_used;
  doc["programs"] = e.programs;
  doc["last_term"] = rational_to_json(prefix.back());
  bool monotone = true;
  for (std::size_t i = 1; i < prefix.size(); ++i) {
    if (prefix[i] < prefix[i - 1]) monotone = false;
  }
  doc["monotone"] = monotone;
  doc["bounded_by_one"] = prefix.back() < Rational(1);
  print_doc(doc, g, out);
  return 0;
}

int cmd_demo_family(bool scaled, Index count, Index m_flag, Index head,
                    Index ticks, const GlobalOpts& g, std::ostream& out) {
  const EnumeratedSet e = enumerate_re(count, ticks);
  const NonuniformityReport rep = nonuniformity_report(e);
  // Default to the witness program: its column flips from 0 to 1 only at
  // the last enumeration slot, which is what the report is about.
  const Index m = m_flag > 0 ? m_flag : rep.witness;
  const auto value = [&](Index n) {
    return scaled ? t17_family(m, n, e) : t15_family(m, n, e);
  };
  Json doc = make_doc("demo");
  doc["demo"] = scaled ? "t17" : "t15";
  doc["count"] = count;
  doc["tick_budget"] = e.tick_budget;
  doc["ticks_used"] = e.ticks_used;
  doc["m"] = m;
  Json head_arr = Json::array();
  const Index shown = head < count ? head : count;
  for (Index n = 1; n <= shown; ++n) {
    head_arr.push_back(Json{{"n", n}, {"value", rational_to_json(value(n))}});
  }
  doc["head"] = head_arr;
  Json at_emission = Json::array();
  if (rep.position > 1) {
    at_emission.push_back(
        Json{{"n", rep.position - 1},
             {"value", rational_to_json(value(rep.position - 1))}});
  }
  at_emission.push_back(Json{
      {"n", rep.position}, {"value", rational_to_json(value(rep.position))}});
  doc["at_emission"] = at_emission;
  doc["report"] = Json{{"witness", rep.witness},
                       {"position", rep.position},
                       {"halt_step", rep.halt_step},
                       {"refuted_prefixes", rep.refuted_prefixes}};
  print_doc(doc, g, out);
  return 0;
}

int cmd_demo_foo(Index n, Precision M, Index probe, const GlobalOpts& g,
                 std::ostream& out) {
  const FooSequences f = foo_sequences(n);
  const Program p = decode_program(n);
  Json doc = make_doc("demo");
  doc["demo"] = "foo";
  doc["n"] = n;
  doc["M"] = M;
  Json lines = Json::array();
  std::istringstream listing(program_listing(p));
  for (std::string line; std::getline(listing, line);) {
    lines.push_back(line);
  }
  doc["program"] = lines;
  const RunResult r = run_program(p, probe);
  doc["probe_steps"] = probe;
  doc["halted"] = r.halted;
  if (r.halted) doc["halt_step"] = r.steps;
  doc["x"] = rational_to_json(approx_member(f.x, n, M));
  doc["w"] = interval_to_json(f.w(n, M));
  doc["a"] = interval_to_json(f.a(n, M));
  print_doc(doc, g, out);
  return 0;
}

Index parse_count_suffix(const std::string& spec, std::size_t at) {
  const std::string tail = spec.substr(at);
  if (tail.empty() || tail.size() > 7 ||
      tail.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a vertex count in graph spec '" + spec + "'",
                     at);
  }
  return std::stoll(tail);
}

Graph graph_from_spec(const std::string& spec) {
  if (spec == "c5") return make_cycle(5);
  if (spec == "k3") return make_complete(3);
  if (spec.rfind("edgeless:", 0) == 0) {
    return make_edgeless(parse_count_suffix(spec, 9));
  }
  if (spec.rfind("file:", 0) == 0) {
    return parse_graph(read_input_text(spec.substr(5)));
  }
  throw ParseError(
      "unknown graph spec '" + spec + "' (want c5, k3, edgeless:N, file:PATH)",
      0);
}

int cmd_demo_shannon(const std::string& spec, Index power, Index cap,
                     const GlobalOpts& g, std::ostream& out) {
  const Graph graph = graph_from_spec(spec);
  const CapacityReport rep = capacity_lower_bounds(graph, power, cap);
  Json doc = make_doc("demo");
  doc["demo"] = "shannon";
  doc["graph"] = Json{{"spec", spec},
                      {"vertices", graph.size()},
                      {"edges", graph.edge_count()}};
  doc["power"] = power;
  doc["cap"] = cap;
  Json bounds = Json::array();
  for (const CapacityBound& b : rep.bounds) {
    bounds.push_back(Json{{"power", b.power},
                          {"alpha", b.alpha},
                          {"root_decimal", b.root_decimal}});
  }
  doc["bounds"] = bounds;
  doc["supermultiplicative"] = rep.supermultiplicative;
  print_doc(doc, g, out);
  return 0;
}

int cmd_verify(const std::string& in_path, const GlobalOpts& g,
               std::ostream& out) {
  Json cert = load_json(in_path);
  const Json& schema = detail::require_field(cert, "schema", "certificate");
  if (!schema.is_string() || schema.get<std::string>() != kSchemaTag) {
    throw SchemaError(std::string("certificate schema must be \"") +
                      kSchemaTag + "\"");
  }
  const bool ok = replay_certificate(cert);
  cert["verified"] = ok;
  print_doc(cert, g, out);
  return ok ? 0 : 4;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  GlobalOpts g;
  int rc = 0;

  CLI::App app{"exact representation transforms and certified moduli of "
               "convergence",
               "fekete"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", g.budget,
                 "search budget over sequence indices (default 10^6)")
      ->envname("FEKETE_BUDGET")
      ->check(CLI::PositiveNumber);
  bool json_flag = false;
  auto* table_flag =
      app.add_flag("--table", g.table, "render tables instead of JSON");
  app.add_flag("--json", json_flag, "emit JSON documents (the default)")
      ->excludes(table_flag);

  // limit
  std::string limit_expr;
  std::string limit_kind;
  Index limit_terms = 16;
  auto* limit = app.add_subcommand(
      "limit", "bound the limit of a_n / n from a finite prefix");
  limit->add_option("--expr", limit_expr, "sequence a_n as an expression in n")
      ->required();
  limit->add_option("--kind", limit_kind, "super or sub")->required();
  limit->add_option("--terms", limit_terms, "prefix length (default 16)")
      ->check(CLI::PositiveNumber);
  limit->callback(
      [&] { rc = cmd_limit(limit_expr, limit_kind, limit_terms, g, out); });

  // modulus
  auto* modulus = app.add_subcommand(
      "modulus", "search for a certified modulus of convergence");
  modulus->require_subcommand(1);

  std::string sw_lower;
  std::string sw_upper;
  Precision sw_M = 0;
  auto* sandwich = modulus->add_subcommand(
      "sandwich", "squeeze a limit between monotone rational sequences");
  sandwich->add_option("--lower", sw_lower, "non-decreasing lower sequence")
      ->required();
  sandwich->add_option("--upper", sw_upper, "non-increasing upper sequence")
      ->required();
  sandwich->add_option("--M", sw_M, "target precision 2^-M")->required();
  sandwich->callback(
      [&] { rc = cmd_modulus_sandwich(sw_lower, sw_upper, sw_M, g, out); });

  std::string mono_in;
  std::string mono_lower_dseq;
  std::string mono_lower_kappa;
  std::string mono_upper_dseq;
  std::string mono_upper_kappa;
  Precision mono_M = 0;
  auto* monotone = modulus->add_subcommand(
      "monotone", "squeeze a limit between monotone described sequences");
  monotone->add_option("--in", mono_in,
                       "monotone representation JSON (path or -)");
  monotone->add_option("--lower-dseq", mono_lower_dseq,
                       "lower members as an expression in n, m");
  monotone->add_option("--lower-kappa", mono_lower_kappa,
                       "lower modulus as an expression in n, M");
  monotone->add_option("--upper-dseq", mono_upper_dseq,
                       "upper members as an expression in n, m");
  monotone->add_option("--upper-kappa", mono_upper_kappa,
                       "upper modulus as an expression in n, M");
  monotone->add_option("--M", mono_M, "target precision 2^-M")->required();
  monotone->callback([&] {
    rc = cmd_modulus_monotone(mono_in, mono_lower_dseq, mono_lower_kappa,
                              mono_upper_dseq, mono_upper_kappa, mono_M, g,
                              out);
  });

  std::string fk_a;
  std::string fk_conv;
  std::string fk_in;
  std::string fk_super_dseq;
  std::string fk_super_kappa;
  std::string fk_sub_dseq;
  std::string fk_sub_kappa;
  Precision fk_M = 0;
  std::string fk_limit;
  auto* fk = modulus->add_subcommand(
      "fekete", "certify a_n / n against its additive limit");
  fk->add_option("--a", fk_a,
                 "non-negative superadditive sequence as an expression in n");
  fk->add_option("--converse", fk_conv,
                 "non-increasing upper sequence with the same limit");
  fk->add_option("--in", fk_in,
                 "JSON object with super and sub representations (path or -)");
  fk->add_option("--super-dseq", fk_super_dseq,
                 "superadditive members as an expression in n, m");
  fk->add_option("--super-kappa", fk_super_kappa,
                 "superadditive modulus as an expression in n, M");
  fk->add_option("--sub-dseq", fk_sub_dseq,
                 "subadditive members as an expression in n, m");
  fk->add_option("--sub-kappa", fk_sub_kappa,
                 "subadditive modulus as an expression in n, M");
  fk->add_option("--M", fk_M, "target precision 2^-M")->required();
  fk->add_option("--limit", fk_limit,
                 "known limit p/q; adds a window check from kappa on");
  fk->callback([&] {
    rc = cmd_modulus_fekete(fk_a, fk_conv, fk_in, fk_super_dseq,
                            fk_super_kappa, fk_sub_dseq, fk_sub_kappa, fk_M,
                            fk_limit, g, out);
  });

  // transform
  auto* transform = app.add_subcommand(
      "transform", "convert between representations of the same real");
  transform->require_subcommand(1);
  std::string tr_in;
  std::string tr_dseq;
  std::string tr_kappa;
  std::string tr_kind;
  Index tr_terms = 8;
  const auto add_transform = [&](const char* name, const char* blurb) {
    auto* sub = transform->add_subcommand(name, blurb);
    sub->add_option("--in", tr_in, "input representation JSON (path or -)");
    sub->add_option("--dseq", tr_dseq, "members as an expression in n, m");
    sub->add_option("--kappa", tr_kappa, "modulus as an expression in n, M");
    sub->add_option("--kind", tr_kind, "input kind for inline specs");
    sub->add_option("--terms", tr_terms, "sample count (default 8)")
        ->check(CLI::PositiveNumber);
    sub->callback([&, name] {
      rc = cmd_transform(name, tr_in, tr_dseq, tr_kappa, tr_kind, tr_terms, g,
                         out);
    });
    return sub;
  };
  add_transform("zw-to-super",
                "lower extremum description to a superadditive one");
  add_transform("zw-to-sub", "upper extremum description to a subadditive one");
  add_transform("additive-to-zw",
                "additive description to an extremum one by averaging");
  add_transform("flatten",
                "extremum description to a single rational sequence");

  // hull
  std::string hull_expr;
  Index hull_terms = 32;
  auto* hull = app.add_subcommand(
      "hull", "least superadditive sequence dominating a prefix");
  hull->add_option("--expr", hull_expr, "base sequence as an expression in n")
      ->required();
  hull->add_option("--terms", hull_terms, "prefix length (default 32)")
      ->check(CLI::PositiveNumber);
  hull->callback([&] { rc = cmd_hull(hull_expr, hull_terms, g, out); });

  // demo
  auto* demo =
      app.add_subcommand("demo", "worked counterexamples and showcases");
  demo->require_subcommand(1);

  Index sp_count = 100;
  Index sp_ticks = kDefaultTicks;
  auto* specker = demo->add_subcommand(
      "specker", "monotone bounded rational sequence with no computable "
                 "limit process");
  specker->add_option("--count", sp_count, "terms to emit (default 100)")
      ->check(CLI::PositiveNumber);
  specker->add_option("--ticks", sp_ticks,
                      "interpreter step budget (default 10^8)")
      ->check(CLI::PositiveNumber);
  specker->callback([&] { rc = cmd_demo_specker(sp_count, sp_ticks, g, out); });

  Index fam_count = 100;
  Index fam_m = 0;
  Index fam_head = 12;
  Index fam_ticks = kDefaultTicks;
  const auto add_family = [&](const char* name, const char* blurb,
                              bool scaled) {
    auto* sub = demo->add_subcommand(name, blurb);
    sub->add_option("--count", fam_count, "enumerated programs (default 100)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--m", fam_m,
                    "member index (default: the report's witness position)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--head", fam_head, "values to list (default 12)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--ticks", fam_ticks,
                    "interpreter step budget (default 10^8)")
        ->check(CLI::PositiveNumber);
    sub->callback([&, scaled] {
      rc = cmd_demo_family(scaled, fam_count, fam_m, fam_head, fam_ticks, g,
                           out);
    });
  };
  add_family("t15", "halting indicators: monotone, no uniform modulus", false);
  add_family("t17", "superadditive family with no uniform modulus", true);

  Index foo_n = 0;
  Precision foo_M = 8;
  Index foo_probe = 1000;
  auto* foo = demo->add_subcommand(
      "foo", "member intervals of the machine-indexed growth family");
  foo->add_option("--n", foo_n, "machine index")
      ->required()
      ->check(CLI::PositiveNumber);
  foo->add_option("--M", foo_M, "interval precision 2^-M (default 8)");
  foo->add_option("--probe", foo_probe,
                  "steps to probe the machine for halting (default 1000)")
      ->check(CLI::PositiveNumber);
  foo->callback([&] { rc = cmd_demo_foo(foo_n, foo_M, foo_probe, g, out); });

  std::string sh_graph = "c5";
  Index sh_power = 2;
  Index sh_cap = kIndependenceCap;
  auto* shannon = demo->add_subcommand(
      "shannon", "independence numbers of strong powers and capacity bounds");
  shannon->add_option("--graph", sh_graph,
                      "c5, k3, edgeless:N, or file:PATH (default c5)");
  shannon->add_option("--power", sh_power, "highest strong power (default 2)")
      ->check(CLI::PositiveNumber);
  shannon->add_option("--cap", sh_cap,
                      "vertex cap for the exact search (default 200)")
      ->check(CLI::PositiveNumber);
  shannon->callback(
      [&] { rc = cmd_demo_shannon(sh_graph, sh_power, sh_cap, g, out); });

  // verify
  std::string verify_in;
  auto* verify = app.add_subcommand(
      "verify", "replay a certificate's inequality window");
  verify->add_option("--in", verify_in, "certificate JSON (path or -)")
      ->required();
  verify->callback([&] { rc = cmd_verify(verify_in, g, out); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return emit_error(out, "UsageError", e.what(), 2);
  } catch (const BudgetExhausted& e) {
    return emit_error(out, e.code(), e.what(), 3);
  } catch (const CertificateViolation& e) {
    return emit_error(out, e.code(), e.what(), 4);
  } catch (const Error& e) {
    return emit_error(out, e.code(), e.what(), 2);
  } catch (const std::exception& e) {
    return emit_error(out, "InternalError", e.what(), 2);
  }
  return rc;
}

}  // namespace fekete
