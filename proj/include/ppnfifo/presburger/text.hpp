#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ppnfifo/presburger/relation.hpp"
#include "ppnfifo/presburger/set.hpp"

namespace ppnfifo::presburger {

// Textual form, close to isl:
//
//   { [N, T] -> [t, i] : 1 <= t <= T and 1 <= i <= N }
//   { [T, N] -> [t - 1, i] -> [t, i] : 0 < t <= T and 0 <= i <= N }
//   { [x] : exists e : x = 2e or x = 0 }
//
// A leading tuple before the dimension tuple(s) lists parameters. Tuple
// entries may be expressions or repeated names; each becomes a fresh
// dimension tied by an equality. Identifiers listed in `context_params` may
// be used without being declared and are appended to the parameter list.

IntegerSet parse_set(std::string_view text, const std::vector<std::string>& context_params = {});
IntegerRelation parse_relation(std::string_view text, const std::vector<std::string>& context_params = {});

/// An affine expression over the columns of `space`, e.g. "2t + i - 1".
AffineExpr parse_affine(std::string_view text, const Space& space);

std::string format_affine(const AffineExpr& e, const Space& space);
std::string format_constraint(const Constraint& c, const Space& space);
std::string format_set(const IntegerSet& s);
std::string format_relation(const IntegerRelation& r);

}  // namespace ppnfifo::presburger
