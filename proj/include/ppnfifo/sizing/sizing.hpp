#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ppnfifo/patterns/patterns.hpp"

namespace ppnfifo::sizing {

using patterns::PatternClass;
using ppn::Schedule;
using presburger::IntegerRelation;
using presburger::ParamAssignment;
using presburger::Point;

/// Global position of an event: (phase, timestamp zero-padded to `width`).
Point global_key(std::int64_t phase, const Point& timestamp, std::size_t width);

struct Endpoints {
  const Schedule* producer;
  const Schedule* consumer;
  std::int64_t producer_phase = 0;
  std::int64_t consumer_phase = 0;
  bool same_process = false;
};

/// Peak number of values written and not yet read for the last time, with
/// reads ordered before writes at equal global keys (an iteration consumes
/// its inputs before producing). Raises ScheduleCollision when distinct
/// processes share a key and CausalityError when a read precedes its write.
std::int64_t max_live(const IntegerRelation& rel, const Endpoints& ends, const ParamAssignment& pa,
                      std::size_t budget = presburger::kDefaultPointBudget);
std::int64_t max_live(const ppn::PPN& net, const ppn::Channel& c, const ParamAssignment& pa,
                      std::size_t budget = presburger::kDefaultPointBudget);

Endpoints endpoints(const ppn::PPN& net, const ppn::Channel& c);

/// Smallest power of two >= n; 0 stays 0.
std::int64_t round_size(std::int64_t n);

struct ChannelSize {
  std::string id;
  std::int64_t raw_maxlive = 0;
  std::int64_t rounded = 0;
  PatternClass pattern = PatternClass::Fifo;
  bool operator==(const ChannelSize&) const = default;
};

struct SizeReport {
  std::vector<ChannelSize> channels;  // sorted by id
  std::int64_t fifo_size = 0;
  std::int64_t total_size = 0;
  bool operator==(const SizeReport&) const = default;
};

SizeReport size_report(const ppn::PPN& net, const ParamAssignment& pa,
                       const std::map<std::string, PatternClass>& classes,
                       std::size_t budget = presburger::kDefaultPointBudget);

/// 100 * part / whole truncated toward zero, as "37%". Empty whole gives "0%".
std::string percent_string(std::int64_t part, std::int64_t whole);
/// (split - fail) / fail rounded half away from zero, as "-44%". Blank when fail is 0.
std::string delta_string(std::int64_t fail, std::int64_t split);

}  // namespace ppnfifo::sizing
