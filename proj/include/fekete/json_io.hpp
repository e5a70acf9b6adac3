#pragma once

#include <json.hpp>

#include "fekete/rational.hpp"
#include "fekete/seq.hpp"

// JSON schemas for the model types.  Numbers that must stay exact travel as
// decimal strings, never as JSON floats.
//
// Sequences and moduli serialize as their defining spec:
//   {"kind": "expr", "text": "<formula>"}
//   {"kind": "builtin", "name": "<registered name>", "params": {...}}
// Moduli additionally carry {"budget": <int>}.  Objects built from ad-hoc
// closures have no spec; their *_to_json returns null and callers decide
// whether that is an error.  Loaders take a default budget used wherever the
// document does not pin one.

namespace fekete {

// {"num": "<decimal>", "den": "<decimal>"}
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json interval_to_json(const Interval& iv);

Json seqdef_to_json(const SeqDef& s);
SeqDef seqdef_from_json(const Json& j, Index default_budget = kDefaultBudget);

Json dseqdef_to_json(const DoubleSeqDef& s);
DoubleSeqDef dseqdef_from_json(const Json& j,
                               Index default_budget = kDefaultBudget);

Json modulus_to_json(const Modulus& m);
Modulus modulus_from_json(const Json& j, Index default_budget = kDefaultBudget);

Json modulus2_to_json(const Modulus2& m);
Modulus2 modulus2_from_json(const Json& j,
                            Index default_budget = kDefaultBudget);

// {"seq": ..., "modulus": ...}
Json sd_to_json(const StandardDescription& d);
StandardDescription sd_from_json(const Json& j,
                                 Index default_budget = kDefaultBudget);

// {"dseq": ..., "modulus2": ...}
Json ssd_to_json(const SeqStandardDescription& d);
SeqStandardDescription ssd_from_json(const Json& j,
                                     Index default_budget = kDefaultBudget);

// {"lower": <ssd>, "upper": <ssd>}
Json monotone_to_json(const MonotoneRepresentation& r);
MonotoneRepresentation monotone_from_json(const Json& j,
                                          Index default_budget = kDefaultBudget);

// {"kind": "superadditive" | "subadditive", "desc": <ssd>}
Json additive_to_json(const AdditiveRepresentation& r);
AdditiveRepresentation additive_from_json(const Json& j,
                                          Index default_budget = kDefaultBudget);

// {"kind": "lower" | "upper", "desc": <ssd>}
Json zw_to_json(const ZWRepresentation& r);
ZWRepresentation zw_from_json(const Json& j,
                              Index default_budget = kDefaultBudget);

namespace detail {
const Json& require_field(const Json& j, const char* key, const char* what);
}  // namespace detail

}  // namespace fekete
