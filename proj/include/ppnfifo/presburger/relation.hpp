#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ppnfifo/presburger/set.hpp"

namespace ppnfifo::presburger {

using PointPair = std::pair<Point, Point>;

/// A relation between an input and an output tuple, stored as a set over the
/// concatenated dimensions (input first). Input and output share parameters.
class IntegerRelation {
 public:
  IntegerRelation() = default;
  /// Empty relation. Output names clashing with input names are primed.
  IntegerRelation(std::vector<std::string> in_dims, std::vector<std::string> out_dims,
                  std::vector<std::string> params = {}, std::vector<std::string> existentials = {});

  static IntegerRelation from_set(IntegerSet wrapped, std::size_t n_in);
  static IntegerRelation universe(std::vector<std::string> in_dims, std::vector<std::string> out_dims,
                                  std::vector<std::string> params = {});

  std::size_t n_in() const { return n_in_; }
  std::size_t n_out() const { return wrapped_.space().n_dims() - n_in_; }
  const std::vector<std::string>& params() const { return wrapped_.space().params(); }
  std::vector<std::string> in_dims() const;
  std::vector<std::string> out_dims() const;
  Space in_space() const { return Space(in_dims(), params()); }
  Space out_space() const { return Space(out_dims(), params()); }

  /// The set over (in dims, out dims).
  const IntegerSet& wrapped() const { return wrapped_; }
  std::size_t in_column(std::size_t i) const { return i; }
  std::size_t out_column(std::size_t i) const { return n_in_ + i; }

  IntegerRelation intersect(const IntegerRelation& o, const SolverOptions& opts = {}) const;
  /// Intersects with a set over the wrapped space.
  IntegerRelation intersect(const IntegerSet& s, const SolverOptions& opts = {}) const;
  IntegerRelation intersect_domain(const IntegerSet& in_set, const IntegerSet& out_set,
                                   const SolverOptions& opts = {}) const;
  IntegerRelation unite(const IntegerRelation& o) const;
  IntegerRelation instantiate(const ParamAssignment& pa) const;
  /// Same pairs with renamed dimensions; output names clashing with input names are primed.
  IntegerRelation renamed(std::vector<std::string> in_dims, std::vector<std::string> out_dims) const;
  IntegerRelation align_params(const std::vector<std::string>& params) const;

  bool is_empty(const SolverOptions& opts = {}) const { return wrapped_.is_empty(opts); }
  std::vector<PointPair> enumerate_pairs(std::size_t budget = kDefaultPointBudget) const;

  std::string to_string() const;

  bool operator==(const IntegerRelation&) const = default;

 private:
  IntegerSet wrapped_;
  std::size_t n_in_ = 0;
};

bool is_empty(const IntegerRelation& r, const SolverOptions& opts = {});
IntegerRelation intersect(const IntegerRelation& a, const IntegerRelation& b, const SolverOptions& opts = {});
IntegerRelation unite(const IntegerRelation& a, const IntegerRelation& b);
IntegerRelation instantiate(const IntegerRelation& r, const ParamAssignment& pa);

}  // namespace ppnfifo::presburger
