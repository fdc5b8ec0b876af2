#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ppnfifo/presburger/affine.hpp"
#include "ppnfifo/presburger/integer.hpp"
#include "ppnfifo/presburger/space.hpp"

namespace ppnfifo::presburger {

/// Limits for the decision procedures.
struct SolverOptions {
  /// Branch-and-bound nodes explored per conjunction before UnboundedSearch.
  std::size_t node_budget = 200000;
  /// Disjunct count above which intersections raise ComplexityCap.
  std::size_t disjunct_cap = 256;
};

inline constexpr std::size_t kDefaultPointBudget = 1000000;

/// A conjunction of affine constraints, kept sorted and deduplicated.
class Conjunction {
 public:
  Conjunction() = default;
  explicit Conjunction(std::size_t n_columns) : n_columns_(n_columns) {}

  std::size_t n_columns() const { return n_columns_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  /// True once a constraint was found unsatisfiable on its own.
  bool is_infeasible() const { return infeasible_; }

  /// Normalizes and inserts; returns false if the conjunction became infeasible.
  bool add(Constraint c);

  Conjunction intersect(const Conjunction& o) const;
  Conjunction remap(std::size_t n_columns, std::span<const std::size_t> mapping) const;
  bool satisfied_by(std::span<const Integer> values) const;
  bool satisfied_by(std::span<const std::int64_t> values) const;

  bool operator==(const Conjunction&) const = default;

 private:
  std::size_t n_columns_ = 0;
  std::vector<Constraint> constraints_;
  bool infeasible_ = false;
};

/// A finite union of conjunctions over a Space. No disjuncts means empty.
class IntegerSet {
 public:
  IntegerSet() = default;
  /// The empty set over `space`.
  explicit IntegerSet(Space space) : space_(std::move(space)) {}

  static IntegerSet empty(Space space) { return IntegerSet(std::move(space)); }
  static IntegerSet universe(Space space);

  const Space& space() const { return space_; }
  const std::vector<Conjunction>& disjuncts() const { return disjuncts_; }
  std::size_t n_columns() const { return space_.n_columns(); }

  /// Adds a disjunct; syntactically infeasible and duplicate ones are dropped.
  IntegerSet& add_disjunct(Conjunction c);
  /// Adds `c` to every disjunct.
  IntegerSet& add_constraint(const Constraint& c);

  /// Exact for parameter-free sets. Remaining parameters and existentials are
  /// treated as existentially quantified integers.
  bool is_empty(const SolverOptions& opts = {}) const;
  /// Some integer point (all columns), if any.
  std::optional<std::vector<Integer>> sample(const SolverOptions& opts = {}) const;

  IntegerSet intersect(const IntegerSet& o, const SolverOptions& opts = {}) const;
  IntegerSet unite(const IntegerSet& o) const;
  IntegerSet instantiate(const ParamAssignment& pa) const;

  bool references_params() const;
  /// Same set without parameter columns; requires !references_params().
  IntegerSet drop_params() const;

  /// Moves column c to column `mapping[c]` of `target`.
  IntegerSet embed(Space target, std::span<const std::size_t> mapping) const;
  /// Same constraints with the dimensions renamed (existentials are primed on clashes).
  IntegerSet renamed(std::vector<std::string> dims) const;
  /// Reorders/extends parameter columns to `params` by name.
  IntegerSet align_params(const std::vector<std::string>& params) const;

  /// All integer points projected on the dimensions, sorted lexicographically.
  std::vector<Point> enumerate_points(std::size_t budget = kDefaultPointBudget) const;
  bool contains(std::span<const std::int64_t> point) const;

  std::string to_string() const;

  bool operator==(const IntegerSet&) const = default;

 private:
  Space space_;
  std::vector<Conjunction> disjuncts_;
};

bool is_empty(const IntegerSet& s, const SolverOptions& opts = {});
IntegerSet intersect(const IntegerSet& a, const IntegerSet& b, const SolverOptions& opts = {});
IntegerSet unite(const IntegerSet& a, const IntegerSet& b);
IntegerSet instantiate(const IntegerSet& s, const ParamAssignment& pa);
std::vector<Point> enumerate_points(const IntegerSet& s, std::size_t budget = kDefaultPointBudget);

}  // namespace ppnfifo::presburger
