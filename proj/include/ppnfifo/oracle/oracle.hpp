#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppnfifo/patterns/patterns.hpp"
#include "ppnfifo/sizing/sizing.hpp"

namespace ppnfifo::oracle {

using patterns::PatternClass;
using presburger::IntegerRelation;
using presburger::ParamAssignment;
using presburger::Point;

struct TraceWrite {
  Point time;
  Point iteration;
};

struct TraceRead {
  Point time;
  Point iteration;
  std::size_t source;  // index into writes
};

/// Writes in producer order, reads in consumer order.
struct Trace {
  std::vector<TraceWrite> writes;
  std::vector<TraceRead> reads;

  std::string to_json() const;
};

/// Enumerates the channel at `pa` and orders both sides by their schedules.
/// Equal timestamps on one side raise ScheduleCollision.
Trace build_trace(const IntegerRelation& rel, const ppn::Schedule& sp, const ppn::Schedule& sc,
                  const ParamAssignment& pa, std::size_t budget = presburger::kDefaultPointBudget);

struct OracleVerdict {
  bool in_order = true;
  bool unicity = true;
  PatternClass pattern = PatternClass::Fifo;
  /// On a reversal: "read of w<j> after read of w<i>" with iterations.
  std::string witness;
};

/// In order: source indices never decrease along the read order. Unicity: no
/// source index repeats.
OracleVerdict oracle_classify(const Trace& t);
OracleVerdict oracle_classify(const IntegerRelation& rel, const ppn::Schedule& sp, const ppn::Schedule& sc,
                              const ParamAssignment& pa, std::size_t budget = presburger::kDefaultPointBudget);

/// Replays writes and reads in global order and tracks the live set.
std::int64_t oracle_maxlive(const IntegerRelation& rel, const sizing::Endpoints& ends, const ParamAssignment& pa,
                            std::size_t budget = presburger::kDefaultPointBudget);
std::int64_t oracle_maxlive(const ppn::PPN& net, const ppn::Channel& c, const ParamAssignment& pa,
                            std::size_t budget = presburger::kDefaultPointBudget);

}  // namespace ppnfifo::oracle
