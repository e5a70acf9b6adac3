#include "fekete/json_io.hpp"

#include <memory>

#include "fekete/machines.hpp"
#include "fekete/transforms.hpp"

namespace fekete {

namespace {

std::string text_field(const Json& j, const char* what) {
  const Json& t = detail::require_field(j, "text", what);
  if (!t.is_string()) {
    throw SchemaError(std::string(what) + ": \"text\" must be a string");
  }
  return t.get<std::string>();
}

std::string kind_field(const Json& j, const char* what) {
  const Json& k = detail::require_field(j, "kind", what);
  if (!k.is_string()) {
    throw SchemaError(std::string(what) + ": \"kind\" must be a string");
  }
  return k.get<std::string>();
}

Index budget_field(const Json& j, Index fallback) {
  if (!j.is_object() || !j.contains("budget")) return fallback;
  const Json& b = j["budget"];
  if (!b.is_number_integer() || b.get<Index>() < 1) {
    throw SchemaError("\"budget\" must be a positive integer");
  }
  return b.get<Index>();
}

const Json& source_field(const Json& j, const char* what) {
  return detail::require_field(detail::require_field(j, "params", what),
                               "source", what);
}

Index int_param(const Json& params, const char* key, const char* what,
                Index lowest) {
  const Json& v = detail::require_field(params, key, what);
  if (!v.is_number_integer())
    throw SchemaError(std::string(what) + ": \"" + key +
                      "\" must be an integer");
  const Index value = v.get<Index>();
  if (value < lowest)
    throw SchemaError(std::string(what) + ": \"" + key + "\" must be >= " +
                      std::to_string(lowest));
  return value;
}

Index optional_int_param(const Json& params, const char* key, Index fallback,
                         const char* what, Index lowest) {
  if (!params.is_object() || !params.contains(key)) return fallback;
  return int_param(params, key, what, lowest);
}

constexpr Index kDefaultTickBudget = 100000000;

// The enumeration behind a specker/t15/t17 sequence is built once at load
// time; construction cost and budget errors surface at the load site, and
// every closure over the same document sees the same set.
std::shared_ptr<EnumeratedSet> enumeration_param(const Json& j,
                                                 const char* what) {
  const Json& params = detail::require_field(j, "params", what);
  const Index count = int_param(params, "count", what, 1);
  const Index ticks =
      optional_int_param(params, "ticks", kDefaultTickBudget, what, 1);
  return std::make_shared<EnumeratedSet>(enumerate_re(count, ticks));
}

}  // namespace

Json rational_to_json(const Rational& r) {
  return Json{{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

Rational rational_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("num") || !j.contains("den") ||
      !j["num"].is_string() || !j["den"].is_string()) {
    throw SchemaError("rational must be {\"num\": string, \"den\": string}");
  }
  mpz_class num, den;
  if (mpz_set_str(num.get_mpz_t(), j["num"].get<std::string>().c_str(), 10) != 0 ||
      mpz_set_str(den.get_mpz_t(), j["den"].get<std::string>().c_str(), 10) != 0) {
    throw SchemaError("rational components must be decimal integers");
  }
  return Rational::from_integers(num, den);
}

Json interval_to_json(const Interval& iv) {
  return Json{{"lo", rational_to_json(iv.lo)}, {"hi", rational_to_json(iv.hi)}};
}

Json seqdef_to_json(const SeqDef& s) { return s.spec; }

SeqDef seqdef_from_json(const Json& j, Index default_budget) {
  const std::string kind = kind_field(j, "sequence");
  if (kind == "expr") {
    return SeqDef::from_expr(text_field(j, "sequence"));
  }
  if (kind == "builtin") {
    const Json& name = detail::require_field(j, "name", "sequence");
    if (name == "zw_flatten") {
      return zw_flatten(zw_from_json(source_field(j, "zw_flatten"),
                                     default_budget));
    }
    if (name == "specker") {
      auto e = enumeration_param(j, "specker");
      SeqDef out;
      out.fn = [e](Index n) { return specker_term(n, *e); };
      out.spec = j;
      return out;
    }
    if (name == "t15" || name == "t17") {
      const bool scaled = name == "t17";
      const char* what = scaled ? "t17" : "t15";
      auto e = enumeration_param(j, what);
      const Index m = int_param(j["params"], "m", what, 1);
      SeqDef out;
      out.fn = [e, m, scaled](Index n) {
        return scaled ? t17_family(m, n, *e) : t15_family(m, n, *e);
      };
      out.spec = j;
      return out;
    }
    throw SchemaError("unknown builtin sequence \"" + name.dump() + "\"");
  }
  throw SchemaError("unknown sequence kind \"" + kind + "\"");
}

Json dseqdef_to_json(const DoubleSeqDef& s) { return s.spec; }

DoubleSeqDef dseqdef_from_json(const Json& j, Index default_budget) {
  const std::string kind = kind_field(j, "double sequence");
  if (kind == "expr") {
    return DoubleSeqDef::from_expr(text_field(j, "double sequence"));
  }
  if (kind == "builtin") {
    const Json& name = detail::require_field(j, "name", "double sequence");
    if (name == "zw_to_superadditive") {
      return zw_to_superadditive(
                 zw_from_json(source_field(j, "zw_to_superadditive"),
                              default_budget))
          .desc.dseq;
    }
    if (name == "zw_to_subadditive") {
      return zw_to_subadditive(
                 zw_from_json(source_field(j, "zw_to_subadditive"),
                              default_budget))
          .desc.dseq;
    }
    if (name == "per_index_average") {
      SeqStandardDescription src = ssd_from_json(
          source_field(j, "per_index_average"), default_budget);
      DoubleSeqDef out;
      out.fn = [dseq = src.dseq](Index n, Index m) {
        return dseq(n, m) / Rational(static_cast<long>(n));
      };
      out.spec = j;
      return out;
    }
    if (name == "foo_x") {
      const Json& params = detail::require_field(j, "params", "foo_x");
      return foo_sequences(int_param(params, "n_limit", "foo_x", 1)).x.dseq;
    }
    throw SchemaError("unknown builtin double sequence \"" + name.dump() + "\"");
  }
  throw SchemaError("unknown double sequence kind \"" + kind + "\"");
}

Json modulus_to_json(const Modulus& m) {
  if (m.spec().is_null()) return nullptr;
  Json out = m.spec();
  out["budget"] = m.budget();
  return out;
}

Modulus modulus_from_json(const Json& j, Index default_budget) {
  if (kind_field(j, "modulus") != "expr") {
    throw SchemaError("modulus must have kind \"expr\"");
  }
  return Modulus::from_expr(text_field(j, "modulus"),
                            budget_field(j, default_budget));
}

Json modulus2_to_json(const Modulus2& m) {
  if (m.spec().is_null()) return nullptr;
  Json out = m.spec();
  out["budget"] = m.budget();
  return out;
}

Modulus2 modulus2_from_json(const Json& j, Index default_budget) {
  if (kind_field(j, "modulus") != "expr") {
    throw SchemaError("modulus must have kind \"expr\"");
  }
  return Modulus2::from_expr(text_field(j, "modulus"),
                             budget_field(j, default_budget));
}

Json sd_to_json(const StandardDescription& d) {
  Json seq = seqdef_to_json(d.seq);
  Json mod = modulus_to_json(d.modulus);
  if (seq.is_null() || mod.is_null()) return nullptr;
  return Json{{"seq", std::move(seq)}, {"modulus", std::move(mod)}};
}

StandardDescription sd_from_json(const Json& j, Index default_budget) {
  StandardDescription d;
  d.seq = seqdef_from_json(detail::require_field(j, "seq", "description"),
                           default_budget);
  d.modulus = modulus_from_json(
      detail::require_field(j, "modulus", "description"), default_budget);
  return d;
}

Json ssd_to_json(const SeqStandardDescription& d) {
  Json dseq = dseqdef_to_json(d.dseq);
  Json mod = modulus2_to_json(d.modulus2);
  if (dseq.is_null() || mod.is_null()) return nullptr;
  return Json{{"dseq", std::move(dseq)}, {"modulus2", std::move(mod)}};
}

SeqStandardDescription ssd_from_json(const Json& j, Index default_budget) {
  SeqStandardDescription d;
  d.dseq = dseqdef_from_json(detail::require_field(j, "dseq", "description"),
                             default_budget);
  d.modulus2 = modulus2_from_json(
      detail::require_field(j, "modulus2", "description"), default_budget);
  return d;
}

Json monotone_to_json(const MonotoneRepresentation& r) {
  Json lower = ssd_to_json(r.lower);
  Json upper = ssd_to_json(r.upper);
  if (lower.is_null() || upper.is_null()) return nullptr;
  return Json{{"lower", std::move(lower)}, {"upper", std::move(upper)}};
}

MonotoneRepresentation monotone_from_json(const Json& j, Index default_budget) {
  MonotoneRepresentation r;
  r.lower = ssd_from_json(detail::require_field(j, "lower", "monotone pair"),
                          default_budget);
  r.upper = ssd_from_json(detail::require_field(j, "upper", "monotone pair"),
                          default_budget);
  return r;
}

Json additive_to_json(const AdditiveRepresentation& r) {
  Json desc = ssd_to_json(r.desc);
  if (desc.is_null()) return nullptr;
  return Json{{"kind", r.kind == AdditiveKind::superadditive ? "superadditive"
                                                             : "subadditive"},
              {"desc", std::move(desc)}};
}

AdditiveRepresentation additive_from_json(const Json& j, Index default_budget) {
  const std::string kind = kind_field(j, "additive representation");
  AdditiveRepresentation r;
  if (kind == "superadditive") {
    r.kind = AdditiveKind::superadditive;
  } else if (kind == "subadditive") {
    r.kind = AdditiveKind::subadditive;
  } else {
    throw SchemaError("additive kind must be superadditive or subadditive");
  }
  r.desc = ssd_from_json(
      detail::require_field(j, "desc", "additive representation"),
      default_budget);
  return r;
}

Json zw_to_json(const ZWRepresentation& r) {
  Json desc = ssd_to_json(r.desc);
  if (desc.is_null()) return nullptr;
  return Json{{"kind", r.kind == ZWKind::lower ? "lower" : "upper"},
              {"desc", std::move(desc)}};
}

ZWRepresentation zw_from_json(const Json& j, Index default_budget) {
  const std::string kind = kind_field(j, "extremum representation");
  ZWRepresentation r;
  if (kind == "lower") {
    r.kind = ZWKind::lower;
  } else if (kind == "upper") {
    r.kind = ZWKind::upper;
  } else {
    throw SchemaError("extremum kind must be lower or upper");
  }
  r.desc = ssd_from_json(
      detail::require_field(j, "desc", "extremum representation"),
      default_budget);
  return r;
}

namespace detail {

const Json& require_field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw SchemaError(std::string(what) + ": missing field \"" + key + "\"");
  }
  return j[key];
}

}  // namespace detail

}  // namespace fekete
