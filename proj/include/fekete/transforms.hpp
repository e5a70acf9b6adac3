#pragma once

#include <utility>

#include "fekete/seq.hpp"

namespace fekete {

// Conversions between the representation kinds, plus the pairing function
// they share.  Every derived object keeps exact rational values; each
// construction consumes one approximation of the source per derived term
// and pays for it with an explicit 2^-j radius term.

// Diagonal pairing over 1-based pairs:
//   cantor_pair(i, j) = (i + j - 2)(i + j - 1) / 2 + j
// so (1,1) -> 1, (2,1) -> 2, (1,2) -> 3, (3,1) -> 4, (2,2) -> 5, ...
Index cantor_pair(Index i, Index j);
std::pair<Index, Index> cantor_unpair(Index k);

// Single sequence with the same supremum (lower kind) or infimum (upper
// kind) as the source: term n uses the source member i = pair_first(n)
// approximated to radius 2^-j, j = pair_second(n), shifted down (lower) or
// up (upper) by that radius so the extreme is approached one-sidedly.
SeqDef zw_flatten(const ZWRepresentation& z);

// Superadditive description of the same value as a lower ZW source: the
// flattened terms are folded into their running maximum r'_n, and the
// output members are n * r'_n with the trivial modulus (every stage is
// exact already).
AdditiveRepresentation zw_to_superadditive(const ZWRepresentation& z);

// Mirror image for an upper ZW source: running minimum, n * l'_n,
// subadditive output.
AdditiveRepresentation zw_to_subadditive(const ZWRepresentation& z);

// a_n / n converges to the represented value from the useful side, so the
// per-member average turns an additive representation into a ZW one
// (superadditive -> lower, subadditive -> upper) with the source modulus.
ZWRepresentation additive_to_zw(const AdditiveRepresentation& a);

}  // namespace fekete
