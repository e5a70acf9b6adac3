#include "fekete/transforms.hpp"

#include <climits>
#include <cmath>

#include "fekete/json_io.hpp"
#include "fekete/prefix_cache.hpp"

namespace fekete {

namespace {

using Wide = unsigned __int128;

Wide diagonal_base(Index s) {
  // Index of the last pair before diagonal s (pairs with i + j == s).
  return Wide(s - 2) * Wide(s - 1) / 2;
}

Json source_params(const ZWRepresentation& z) {
  Json src = zw_to_json(z);
  if (src.is_null()) return nullptr;
  return Json{{"source", std::move(src)}};
}

Json builtin_spec(const char* name, Json params) {
  if (params.is_null()) return nullptr;
  return Json{{"kind", "builtin"}, {"name", name}, {"params", std::move(params)}};
}

}  // namespace

Index cantor_pair(Index i, Index j) {
  if (i < 1 || j < 1) {
    throw PreconditionViolation("pairing needs 1-based components");
  }
  const Wide s = Wide(i) + Wide(j);
  const Wide k = (s - 2) * (s - 1) / 2 + Wide(j);
  if (k > Wide(LLONG_MAX)) {
    throw TooLarge("pair index overflows");
  }
  return static_cast<Index>(k);
}

std::pair<Index, Index> cantor_unpair(Index k) {
  if (k < 1) {
    throw PreconditionViolation("pair index must be >= 1");
  }
  // Locate the diagonal s with diagonal_base(s) < k <= diagonal_base(s + 1);
  // the float estimate is only a seed, the exact loops settle it.
  Index s = static_cast<Index>(std::sqrt(2.0L * static_cast<long double>(k))) + 2;
  if (s < 2) s = 2;
  while (diagonal_base(s) >= Wide(k)) --s;
  while (diagonal_base(s + 1) < Wide(k)) ++s;
  const Index j = k - static_cast<Index>(diagonal_base(s));
  return {s - j, j};
}

SeqDef zw_flatten(const ZWRepresentation& z) {
  const bool lower = z.kind == ZWKind::lower;
  SeqDef out;
  // Term n approximates member i = first(n) to radius 2^-j, j = second(n),
  // then steps one radius toward the safe side of the extreme.  Every
  // member recurs with radii shrinking to zero, so the shifted terms still
  // come arbitrarily close to the represented supremum or infimum while
  // never crossing it.
  out.fn = [d = z.desc, lower](Index n) {
    const auto [i, j] = cantor_unpair(n);
    const Rational r = approx_member(d, i, j);
    const Rational radius = Rational::pow2(static_cast<long>(-j));
    return lower ? r - radius : r + radius;
  };
  out.spec = builtin_spec("zw_flatten", source_params(z));
  return out;
}

AdditiveRepresentation zw_to_superadditive(const ZWRepresentation& z) {
  if (z.kind != ZWKind::lower) {
    throw PreconditionViolation(
        "superadditive construction needs a lower representation");
  }
  SeqDef flat = zw_flatten(z);
  PrefixExtreme running([flat](Index n) { return flat(n); },
                        PrefixExtreme::Kind::max);
  AdditiveRepresentation out;
  out.kind = AdditiveKind::superadditive;
  // n times a non-decreasing sequence is superadditive, and the members are
  // exact rationals, so a constant modulus closes the description.
  out.desc.dseq.fn = [running](Index n, Index) {
    return Rational(static_cast<long>(n)) * running.at(n);
  };
  out.desc.dseq.spec = builtin_spec("zw_to_superadditive", source_params(z));
  out.desc.modulus2 = Modulus2::from_expr("1", z.desc.modulus2.budget());
  return out;
}

AdditiveRepresentation zw_to_subadditive(const ZWRepresentation& z) {
  if (z.kind != ZWKind::upper) {
    throw PreconditionViolation(
        "subadditive construction needs an upper representation");
  }
  SeqDef flat = zw_flatten(z);
  PrefixExtreme running([flat](Index n) { return flat(n); },
                        PrefixExtreme::Kind::min);
  AdditiveRepresentation out;
  out.kind = AdditiveKind::subadditive;
  out.desc.dseq.fn = [running](Index n, Index) {
    return Rational(static_cast<long>(n)) * running.at(n);
  };
  out.desc.dseq.spec = builtin_spec("zw_to_subadditive", source_params(z));
  out.desc.modulus2 = Modulus2::from_expr("1", z.desc.modulus2.budget());
  return out;
}

ZWRepresentation additive_to_zw(const AdditiveRepresentation& a) {
  ZWRepresentation out;
  out.kind = a.kind == AdditiveKind::superadditive ? ZWKind::lower : ZWKind::upper;
  // |a_n - r| < 2^-M gives |a_n/n - r/n| < 2^-M / n <= 2^-M, so the source
  // modulus certifies the averaged members unchanged.
  out.desc.dseq.fn = [src = a.desc.dseq](Index n, Index m) {
    return src(n, m) / Rational(static_cast<long>(n));
  };
  Json src_json = ssd_to_json(a.desc);
  out.desc.dseq.spec = builtin_spec(
      "per_index_average",
      src_json.is_null() ? Json(nullptr) : Json{{"source", std::move(src_json)}});
  out.desc.modulus2 = a.desc.modulus2;
  return out;
}

}  // namespace fekete
