#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ppnfifo/presburger/set.hpp"

namespace ppnfifo::presburger {

/// Rational feasibility over variables with optional bounds and linear rows
/// (general simplex with Bland's rule). Copyable, which is how branch-and-bound
/// forks subproblems.
class Simplex {
 public:
  explicit Simplex(std::size_t n_vars);

  std::size_t n_vars() const { return n_vars_; }

  /// Adds `expr >= 0` or `expr = 0` over the first n_vars columns of expr.
  /// Returns false if the constraint alone is infeasible.
  bool add(const Constraint& c);
  bool set_lower(std::size_t var, const Rational& v);
  bool set_upper(std::size_t var, const Rational& v);

  /// Finds an assignment satisfying all bounds; false if the rational relaxation is empty.
  bool check();
  const Rational& value(std::size_t var) const { return vars_[var].value; }

 private:
  struct Var {
    std::optional<Rational> lower;
    std::optional<Rational> upper;
    Rational value = 0;
    bool basic = false;
    std::size_t row = 0;
  };

  std::size_t add_row(std::vector<Rational> coeffs);
  void update_nonbasic(std::size_t var, const Rational& v);
  void pivot_and_update(std::size_t basic, std::size_t entering, const Rational& v);
  bool violates(const Var& v) const;

  std::size_t n_vars_;
  std::vector<Var> vars_;
  // rows_[r][j]: coefficient of var j in the definition of row r's basic variable.
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::size_t> row_var_;
  bool infeasible_ = false;
};

/// An integer point satisfying `c`, by equality elimination then
/// branch-and-bound over the simplex relaxation.
/// Throws UnboundedSearch when more than `opts.node_budget` nodes are needed.
std::optional<std::vector<Integer>> integer_sample(const Conjunction& c, const SolverOptions& opts = {});

/// All integer points of a parameter-free conjunction, projected on the first
/// `n_dims` columns (the remaining columns are existential). Points are
/// appended to `out` in lexicographic order.
void enumerate_conjunction(const Conjunction& c, std::size_t n_dims, std::size_t budget, std::vector<Point>& out);

}  // namespace ppnfifo::presburger
