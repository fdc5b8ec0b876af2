#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "ppnfifo/ppn/ppn.hpp"

namespace ppnfifo::patterns {

using ppn::Schedule;
using presburger::IntegerRelation;
using presburger::IntegerSet;
using presburger::ParamAssignment;

enum class PatternClass { Fifo, InOrderWithMultiplicity, OutOfOrderNoMultiplicity, OutOfOrderWithMultiplicity };

PatternClass quadrant(bool in_order, bool unicity);
std::string to_string(PatternClass c);
PatternClass pattern_from_string(std::string_view s);

enum class LexMode {
  PrecedesAtDepth,   // first k-1 entries equal, entry k strictly smaller
  EqualFirst,        // first k entries equal
  StrictlyPrecedes,  // lexicographically smaller
  Equal,
};

/// Pairs (x, y) of the relation's space with theta_P(x) <mode> theta_C(y).
/// The result lives in rel.wrapped().space() and is not intersected with rel.
/// Parameters missing from that space are taken from `pa`.
IntegerSet lex_compare_set(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc, LexMode mode,
                           std::size_t k = 0, const ParamAssignment& pa = {});

/// With `pa`, the relation is instantiated first (exact). Without it, the
/// relation and schedules must not depend on parameters (MissingParameter).
bool in_order(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc,
              const std::optional<ParamAssignment>& pa = std::nullopt);
bool unicity(const IntegerRelation& rel, const std::optional<ParamAssignment>& pa = std::nullopt);

struct Verdict {
  bool in_order = true;
  bool unicity = true;
  PatternClass pattern = PatternClass::Fifo;
};

Verdict classify(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc,
                 const std::optional<ParamAssignment>& pa = std::nullopt);
Verdict classify(const ppn::PPN& net, const ppn::Channel& c, const std::optional<ParamAssignment>& pa = std::nullopt);

}  // namespace ppnfifo::patterns
