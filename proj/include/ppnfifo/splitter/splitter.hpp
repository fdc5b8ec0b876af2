#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ppnfifo/patterns/patterns.hpp"
#include "ppnfifo/tiling/tiling.hpp"

namespace ppnfifo::splitter {

using patterns::PatternClass;
using ppn::Schedule;
using presburger::IntegerRelation;
using presburger::ParamAssignment;

struct SplitResult {
  /// Crossing depth 1..n, then the intra-tile part.
  std::vector<IntegerRelation> parts;
  std::vector<bool> nonempty_mask;
  /// Pairs whose consumer tile runs before the producer tile. Empty for legal tilings.
  IntegerRelation residual;
  bool residual_empty = true;
};

/// Throws BadScheduleShape unless both schedules start with the n tile
/// coordinates as identity rows and have the same length.
void check_shape(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc, std::size_t n);

/// Emptiness flags are decided at `pa` when given.
SplitResult split(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc, std::size_t n,
                  const std::optional<ParamAssignment>& pa = std::nullopt);

/// Suffix of part k (0-based) of an n-deep split: ".d1".. ".dn", ".intra".
std::string part_suffix(std::size_t k, std::size_t n);

enum class Action { Replaced, Kept, Skipped };
std::string to_string(Action a);

struct PartLog {
  std::string suffix;
  PatternClass pattern = PatternClass::Fifo;
  std::int64_t size = 0;  // pairs at the instantiation
  bool operator==(const PartLog&) const = default;
};

struct ChannelLog {
  std::string id;
  Action action = Action::Skipped;
  std::string reason;
  std::vector<PartLog> parts;
  bool operator==(const ChannelLog&) const = default;
};

struct FifoizeLog {
  std::vector<ChannelLog> channels;
  const ChannelLog* find(const std::string& id) const;
  std::string to_json() const;
  static FifoizeLog from_json(const std::string& text);
  bool operator==(const FifoizeLog&) const = default;
};

/// FIFOIZE on an already tiled network: every channel between processes
/// tiled to the same depth is split; when all nonempty parts classify Fifo
/// they replace it, otherwise it is kept. Empty parts are dropped, and a
/// channel with a single nonempty part is kept as is.
std::pair<ppn::PPN, FifoizeLog> fifoize_tiled(const ppn::PPN& tiled, const ParamAssignment& pa);

/// Tiles `net` then runs fifoize_tiled.
std::pair<ppn::PPN, FifoizeLog> fifoize(const ppn::PPN& net, const tiling::TilingMap& tilings,
                                        const ParamAssignment& pa);

}  // namespace ppnfifo::splitter
