#include "ppnfifo/presburger/set.hpp"

#include <algorithm>
#include <numeric>

#include "ppnfifo/errors.hpp"
#include "ppnfifo/presburger/solver.hpp"
#include "ppnfifo/presburger/text.hpp"

namespace ppnfifo::presburger {

bool Conjunction::add(Constraint c) {
  if (infeasible_) return false;
  switch (c.normalize()) {
    case Constraint::Triviality::AlwaysTrue:
      return true;
    case Constraint::Triviality::AlwaysFalse:
      infeasible_ = true;
      constraints_.clear();
      return false;
    case Constraint::Triviality::NonTrivial:
      break;
  }
  auto it = std::lower_bound(constraints_.begin(), constraints_.end(), c);
  if (it == constraints_.end() || !(*it == c)) constraints_.insert(it, std::move(c));
  return true;
}

Conjunction Conjunction::intersect(const Conjunction& o) const {
  if (o.n_columns_ != n_columns_) throw SpaceMismatch("conjunctions over different column counts");
  Conjunction r = *this;
  if (o.infeasible_) {
    r.infeasible_ = true;
    r.constraints_.clear();
    return r;
  }
  for (const auto& c : o.constraints_) r.add(c);
  return r;
}

Conjunction Conjunction::remap(std::size_t n_columns, std::span<const std::size_t> mapping) const {
  Conjunction r(n_columns);
  if (infeasible_) {
    r.infeasible_ = true;
    return r;
  }
  for (const auto& c : constraints_) r.add({c.expr.remap(n_columns, mapping), c.kind});
  return r;
}

bool Conjunction::satisfied_by(std::span<const Integer> values) const {
  if (infeasible_) return false;
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const Constraint& c) { return c.satisfied_by(values); });
}

bool Conjunction::satisfied_by(std::span<const std::int64_t> values) const {
  if (infeasible_) return false;
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const Constraint& c) { return c.satisfied_by(values); });
}

IntegerSet IntegerSet::universe(Space space) {
  IntegerSet s(std::move(space));
  s.disjuncts_.emplace_back(s.n_columns());
  return s;
}

IntegerSet& IntegerSet::add_disjunct(Conjunction c) {
  if (c.n_columns() != n_columns()) throw SpaceMismatch("disjunct column count does not match the space");
  if (c.is_infeasible()) return *this;
  if (std::find(disjuncts_.begin(), disjuncts_.end(), c) == disjuncts_.end()) {
    disjuncts_.push_back(std::move(c));
  }
  return *this;
}

IntegerSet& IntegerSet::add_constraint(const Constraint& c) {
  std::vector<Conjunction> old;
  old.swap(disjuncts_);
  for (auto& d : old) {
    d.add(c);
    add_disjunct(std::move(d));
  }
  return *this;
}

bool IntegerSet::is_empty(const SolverOptions& opts) const {
  return !sample(opts).has_value();
}

std::optional<std::vector<Integer>> IntegerSet::sample(const SolverOptions& opts) const {
  for (const auto& d : disjuncts_) {
    if (auto p = integer_sample(d, opts)) return p;
  }
  return std::nullopt;
}

namespace {

void require_same_space(const Space& a, const Space& b, const char* op) {
  if (a.n_dims() != b.n_dims() || a.params() != b.params() || a.existentials() != b.existentials()) {
    throw SpaceMismatch(std::string(op) + ": operands live in different spaces");
  }
}

}  // namespace

IntegerSet IntegerSet::intersect(const IntegerSet& o, const SolverOptions& opts) const {
  require_same_space(space_, o.space_, "intersect");
  if (disjuncts_.size() * o.disjuncts_.size() > opts.disjunct_cap) {
    throw ComplexityCap("intersection would produce " +
                        std::to_string(disjuncts_.size() * o.disjuncts_.size()) + " disjuncts");
  }
  IntegerSet r(space_);
  for (const auto& a : disjuncts_) {
    for (const auto& b : o.disjuncts_) r.add_disjunct(a.intersect(b));
  }
  return r;
}

IntegerSet IntegerSet::unite(const IntegerSet& o) const {
  require_same_space(space_, o.space_, "union");
  IntegerSet r = *this;
  for (const auto& d : o.disjuncts_) r.add_disjunct(d);
  return r;
}

IntegerSet IntegerSet::instantiate(const ParamAssignment& pa) const {
  const std::size_t n_kept = space_.n_dims() + space_.n_existentials();
  std::vector<Integer> values;
  for (const auto& p : space_.params()) {
    auto it = pa.find(p);
    if (it == pa.end()) throw MissingParameter("no value given for parameter " + p);
    values.emplace_back(it->second);
  }
  IntegerSet r(Space(space_.dims(), {}, space_.existentials()));
  for (const auto& d : disjuncts_) {
    Conjunction c(n_kept);
    for (const auto& k : d.constraints()) {
      AffineExpr e(n_kept);
      for (std::size_t col = 0; col < n_kept; ++col) e.coeff(col) = k.expr.coeff(col);
      e.constant_term() = k.expr.constant_term();
      for (std::size_t p = 0; p < values.size(); ++p) {
        e.constant_term() += k.expr.coeff(space_.param_column(p)) * values[p];
      }
      c.add({std::move(e), k.kind});
    }
    r.add_disjunct(std::move(c));
  }
  return r;
}

bool IntegerSet::references_params() const {
  for (const auto& d : disjuncts_) {
    for (const auto& c : d.constraints()) {
      for (std::size_t p = 0; p < space_.n_params(); ++p) {
        if (c.expr.coeff(space_.param_column(p)) != 0) return true;
      }
    }
  }
  return false;
}

IntegerSet IntegerSet::drop_params() const {
  if (references_params()) throw MissingParameter("set depends on its parameters");
  ParamAssignment zeros;
  for (const auto& p : space_.params()) zeros[p] = 0;
  return instantiate(zeros);
}

IntegerSet IntegerSet::embed(Space target, std::span<const std::size_t> mapping) const {
  if (mapping.size() != n_columns()) throw SpaceMismatch("embed: mapping size does not match the space");
  IntegerSet r(std::move(target));
  for (const auto& d : disjuncts_) r.add_disjunct(d.remap(r.n_columns(), mapping));
  return r;
}

IntegerSet IntegerSet::renamed(std::vector<std::string> dims) const {
  if (dims.size() != space_.n_dims()) throw SpaceMismatch("rename: arity mismatch");
  std::vector<std::string> taken = dims;
  taken.insert(taken.end(), space_.params().begin(), space_.params().end());
  std::vector<std::string> ex;
  for (const auto& e : space_.existentials()) {
    ex.push_back(fresh_name(e, taken));
    taken.push_back(ex.back());
  }
  std::vector<std::size_t> identity(n_columns());
  std::iota(identity.begin(), identity.end(), 0);
  return embed(Space(std::move(dims), space_.params(), std::move(ex)), identity);
}

IntegerSet IntegerSet::align_params(const std::vector<std::string>& params) const {
  if (params == space_.params()) return *this;
  Space target = space_.with_params(params);
  std::vector<std::size_t> mapping(n_columns());
  std::iota(mapping.begin(), mapping.begin() + space_.n_dims() + space_.n_existentials(), 0);
  for (std::size_t p = 0; p < space_.n_params(); ++p) {
    auto it = std::find(params.begin(), params.end(), space_.params()[p]);
    if (it == params.end()) throw UnknownDimension("unknown parameter " + space_.params()[p]);
    mapping[space_.param_column(p)] = target.param_column(static_cast<std::size_t>(it - params.begin()));
  }
  return embed(std::move(target), mapping);
}

std::vector<Point> IntegerSet::enumerate_points(std::size_t budget) const {
  if (space_.n_params() != 0) {
    if (references_params()) throw Unbounded("parameters must be instantiated before enumeration");
    return drop_params().enumerate_points(budget);
  }
  std::vector<Point> out;
  for (const auto& d : disjuncts_) {
    enumerate_conjunction(d, space_.n_dims(), budget, out);
    if (out.size() > budget) throw BudgetExceeded("more than " + std::to_string(budget) + " points");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool IntegerSet::contains(std::span<const std::int64_t> point) const {
  if (space_.n_params() != 0 && references_params()) {
    throw MissingParameter("membership test on a parametric set");
  }
  if (point.size() != space_.n_dims()) throw SpaceMismatch("point arity does not match the space");
  if (space_.n_existentials() == 0 && space_.n_params() == 0) {
    return std::any_of(disjuncts_.begin(), disjuncts_.end(),
                       [&](const Conjunction& d) { return d.satisfied_by(point); });
  }
  // Fix the dimensions and ask the solver about the rest.
  for (const auto& d : disjuncts_) {
    Conjunction fixed = d;
    for (std::size_t i = 0; i < point.size(); ++i) {
      AffineExpr e = AffineExpr::column(n_columns(), i);
      e.constant_term() = -point[i];
      fixed.add(Constraint::eq(std::move(e)));
    }
    if (integer_sample(fixed)) return true;
  }
  return false;
}

std::string IntegerSet::to_string() const { return format_set(*this); }

bool is_empty(const IntegerSet& s, const SolverOptions& opts) { return s.is_empty(opts); }
IntegerSet intersect(const IntegerSet& a, const IntegerSet& b, const SolverOptions& opts) {
  return a.intersect(b, opts);
}
IntegerSet unite(const IntegerSet& a, const IntegerSet& b) { return a.unite(b); }
IntegerSet instantiate(const IntegerSet& s, const ParamAssignment& pa) { return s.instantiate(pa); }
std::vector<Point> enumerate_points(const IntegerSet& s, std::size_t budget) {
  return s.enumerate_points(budget);
}

}  // namespace ppnfifo::presburger
