#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppnfifo/presburger/relation.hpp"
#include "ppnfifo/presburger/set.hpp"

namespace ppnfifo::ppn {

using presburger::AffineExpr;
using presburger::IntegerRelation;
using presburger::IntegerSet;
using presburger::ParamAssignment;
using presburger::Point;
using presburger::Space;

/// Affine timestamp map. Rows range over the columns of `input_space`
/// (process dims then network parameters).
struct Schedule {
  std::string name;
  Space input_space;
  std::vector<AffineExpr> rows;
  bool sequential = true;

  std::size_t n_rows() const { return rows.size(); }
  /// Parameter values in input_space order; throws MissingParameter.
  std::vector<std::int64_t> param_values(const ParamAssignment& pa) const;
  Point at(const Point& x, const std::vector<std::int64_t>& param_values) const;

  bool operator==(const Schedule&) const = default;
};

struct Process {
  std::string name;
  IntegerSet domain;
  Schedule schedule;
  std::optional<std::string> instance_label;
  /// Number of leading tile dimensions (0 for untiled processes).
  std::size_t tile_depth = 0;
  /// Processes run in phase order; timestamps are only compared within a phase.
  std::int64_t phase = 0;

  const std::vector<std::string>& dims() const { return domain.space().dims(); }

  bool operator==(const Process&) const = default;
};

struct Channel {
  std::string id;
  std::string producer;
  std::string consumer;
  IntegerRelation dataflow;

  bool operator==(const Channel&) const = default;
};

struct ParamDecl {
  std::string name;
  std::optional<std::int64_t> default_value;
  std::optional<std::int64_t> min;
  std::optional<std::int64_t> max;

  bool operator==(const ParamDecl&) const = default;
};

struct PPN {
  std::string name;
  std::vector<ParamDecl> params;
  /// Instantiations used by tests and default cross-checks.
  std::vector<ParamAssignment> test_params;
  std::vector<Process> processes;
  std::vector<Channel> channels;

  std::vector<std::string> param_names() const;
  const Process& process(std::string_view name) const;
  const Process* find_process(std::string_view name) const;
  const Channel* find_channel(std::string_view id) const;
  /// Declared defaults, overridden by `overrides`. Values outside declared
  /// bounds or unknown names raise ValidationError.
  ParamAssignment assignment(const ParamAssignment& overrides = {}) const;
  /// Throws MissingParameter naming the first parameter without a value.
  void require_params(const ParamAssignment& pa) const;

  bool operator==(const PPN&) const = default;
};

/// Builds a schedule over `dims` (plus `params`) from textual rows.
Schedule make_schedule(std::string name, const std::vector<std::string>& dims, const std::vector<std::string>& params,
                       const std::vector<std::string>& rows, bool sequential = true);

/// Parses a model from its JSON text. Relations are restricted to
/// producer domain x consumer domain. When `pa` is given, validate_at runs
/// and a failing report raises ValidationError.
PPN parse_ppn(std::string_view json_text, const std::optional<ParamAssignment>& pa = std::nullopt);
PPN load_ppn(const std::filesystem::path& path, const std::optional<ParamAssignment>& pa = std::nullopt);
std::string dump_ppn(const PPN& ppn);
void save_ppn(const PPN& ppn, const std::filesystem::path& path);

struct ValidationCheck {
  std::string name;
  bool ok = true;
  std::string detail;  // witness on failure
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  /// First failing check, formatted; empty when ok.
  std::string first_failure() const;
};

/// Enumeration checks at fixed parameters: containment of every dataflow in
/// producer x consumer domains, pairwise disjointness of channels sharing
/// endpoints, and injectivity of sequential schedules.
ValidationReport validate_at(const PPN& ppn, const ParamAssignment& pa,
                             std::size_t budget = presburger::kDefaultPointBudget);

std::string format_point(const Point& p);

}  // namespace ppnfifo::ppn
