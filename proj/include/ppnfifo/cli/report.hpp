#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ppnfifo/splitter/splitter.hpp"
#include "ppnfifo/tiling/tiling.hpp"

namespace ppnfifo::cli {

using patterns::PatternClass;
using presburger::ParamAssignment;

struct ChannelRow {
  std::string id;
  std::string producer;
  std::string consumer;
  PatternClass pattern = PatternClass::Fifo;
  bool in_order = true;
  bool unicity = true;
  std::int64_t pairs = 0;
  std::int64_t maxlive = 0;
  std::int64_t size = 0;  // rounded
  std::optional<bool> oracle_agrees;

  bool operator==(const ChannelRow&) const = default;
};

struct StageSummary {
  std::int64_t n_channels = 0;
  std::int64_t n_fifo = 0;
  /// Original channels that are FIFO once split; only on the split stage.
  std::optional<std::int64_t> n_fifo_split;
  std::optional<std::int64_t> n_original;
  std::int64_t fifo_size = 0;
  std::int64_t total_size = 0;

  std::string pct_fifo() const;
  std::string pct_fifo_split() const;
  bool operator==(const StageSummary&) const = default;
};

struct Stage {
  std::string name;
  StageSummary summary;
  std::vector<ChannelRow> channels;

  const ChannelRow* find(const std::string& id) const;
  bool operator==(const Stage&) const = default;
};

struct SizeDelta {
  std::int64_t fail = 0;
  std::int64_t split = 0;

  std::string delta() const;
  bool operator==(const SizeDelta&) const = default;
};

struct Report {
  std::string command;
  std::string network;
  ParamAssignment params;
  tiling::TilingMap tilings;
  Stage before;
  std::optional<Stage> after;
  std::optional<splitter::FifoizeLog> log;
  std::optional<SizeDelta> sizes;
  /// Absent when the oracle was disabled.
  std::optional<bool> oracle_agreement;

  bool operator==(const Report&) const = default;
};

std::string to_json(const Report& r);
Report report_from_json(const std::string& text);
Report load_report(const std::filesystem::path& path);
std::string to_text(const Report& r);

struct Options {
  ParamAssignment params;
  bool oracle = true;
  std::optional<std::filesystem::path> dump_trace;
  std::size_t budget = presburger::kDefaultPointBudget;
};

/// Classification, sizing and (optionally) oracle checks for every channel.
Stage analyze_stage(const std::string& name, const ppn::PPN& net, const ParamAssignment& pa, const Options& opts);

/// Validates at the resolved parameters, then analyzes the network, and the
/// tiled network when tilings are given.
Report analyze(const ppn::PPN& net, const tiling::TilingMap* tilings, const Options& opts);

struct FifoizeRun {
  Report report;
  ppn::PPN network;
};

FifoizeRun run_fifoize(const ppn::PPN& net, const tiling::TilingMap& tilings, const Options& opts);

/// Size of the channels replaced in `split` measured in `original`, against
/// the size of their replacements. MismatchedReports when the reports
/// describe different networks or parameters.
SizeDelta delta_from_reports(const Report& original, const Report& split);
std::string delta_table(const std::string& network, const SizeDelta& d);

/// "T=8,N=16" -> {T: 8, N: 16}.
ParamAssignment parse_params(const std::string& text);

}  // namespace ppnfifo::cli
