#include "ppnfifo/presburger/solver.hpp"

#include <algorithm>
#include <limits>

#include "ppnfifo/errors.hpp"

namespace ppnfifo::presburger {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

bool is_integral(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace

// ---------------------------------------------------------------------------
// Simplex

Simplex::Simplex(std::size_t n_vars) : n_vars_(n_vars), vars_(n_vars) {}

bool Simplex::violates(const Var& v) const {
  return (v.lower && v.value < *v.lower) || (v.upper && v.value > *v.upper);
}

std::size_t Simplex::add_row(std::vector<Rational> coeffs) {
  const std::size_t var = vars_.size();
  vars_.emplace_back();
  for (auto& row : rows_) row.resize(vars_.size());
  coeffs.resize(vars_.size());

  // Express the row over the current nonbasic variables.
  std::vector<Rational> row(vars_.size());
  Rational value = 0;
  for (std::size_t j = 0; j < var; ++j) {
    if (coeffs[j] == 0) continue;
    if (vars_[j].basic) {
      const auto& def = rows_[vars_[j].row];
      for (std::size_t k = 0; k < def.size(); ++k) {
        if (def[k] != 0) row[k] += coeffs[j] * def[k];
      }
    } else {
      row[j] += coeffs[j];
    }
    value += coeffs[j] * vars_[j].value;
  }
  vars_[var].basic = true;
  vars_[var].row = rows_.size();
  vars_[var].value = value;
  rows_.push_back(std::move(row));
  row_var_.push_back(var);
  return var;
}

bool Simplex::add(const Constraint& c) {
  if (infeasible_) return false;
  std::vector<std::size_t> nonzero;
  for (std::size_t j = 0; j < n_vars_; ++j) {
    if (c.expr.coeff(j) != 0) nonzero.push_back(j);
  }
  const Rational k(c.expr.constant_term());
  if (nonzero.empty()) {
    bool holds = c.is_equality() ? k == 0 : k >= 0;
    if (!holds) infeasible_ = true;
    return holds;
  }
  std::size_t var;
  Rational bound;
  bool positive = true;
  if (nonzero.size() == 1) {
    var = nonzero.front();
    const Rational a(c.expr.coeff(var));
    bound = -k / a;
    positive = a > 0;
  } else {
    std::vector<Rational> coeffs(n_vars_);
    for (std::size_t j : nonzero) coeffs[j] = Rational(c.expr.coeff(j));
    var = add_row(std::move(coeffs));
    bound = -k;
  }
  if (c.is_equality()) return set_lower(var, bound) && set_upper(var, bound);
  return positive ? set_lower(var, bound) : set_upper(var, bound);
}

bool Simplex::set_lower(std::size_t var, const Rational& v) {
  Var& x = vars_[var];
  if (x.upper && v > *x.upper) {
    infeasible_ = true;
    return false;
  }
  if (x.lower && *x.lower >= v) return true;
  x.lower = v;
  if (!x.basic && x.value < v) update_nonbasic(var, v);
  return true;
}

bool Simplex::set_upper(std::size_t var, const Rational& v) {
  Var& x = vars_[var];
  if (x.lower && v < *x.lower) {
    infeasible_ = true;
    return false;
  }
  if (x.upper && *x.upper <= v) return true;
  x.upper = v;
  if (!x.basic && x.value > v) update_nonbasic(var, v);
  return true;
}

void Simplex::update_nonbasic(std::size_t var, const Rational& v) {
  const Rational delta = v - vars_[var].value;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (rows_[r][var] != 0) vars_[row_var_[r]].value += rows_[r][var] * delta;
  }
  vars_[var].value = v;
}

void Simplex::pivot_and_update(std::size_t basic, std::size_t entering, const Rational& v) {
  const std::size_t r = vars_[basic].row;
  const Rational a = rows_[r][entering];
  const Rational theta = (v - vars_[basic].value) / a;
  vars_[basic].value = v;
  vars_[entering].value += theta;
  for (std::size_t r2 = 0; r2 < rows_.size(); ++r2) {
    if (r2 != r && rows_[r2][entering] != 0) vars_[row_var_[r2]].value += rows_[r2][entering] * theta;
  }

  // basic = a * entering + sum(others)  =>  entering = (basic - sum(others)) / a
  std::vector<Rational> def(rows_[r].size());
  for (std::size_t k = 0; k < def.size(); ++k) {
    if (k != entering && rows_[r][k] != 0) def[k] = -rows_[r][k] / a;
  }
  def[basic] = Rational(1) / a;
  for (std::size_t r2 = 0; r2 < rows_.size(); ++r2) {
    if (r2 == r) continue;
    const Rational c = rows_[r2][entering];
    if (c == 0) continue;
    rows_[r2][entering] = 0;
    for (std::size_t k = 0; k < def.size(); ++k) {
      if (def[k] != 0) rows_[r2][k] += c * def[k];
    }
  }
  rows_[r] = std::move(def);
  row_var_[r] = entering;
  vars_[entering].basic = true;
  vars_[entering].row = r;
  vars_[basic].basic = false;
}

bool Simplex::check() {
  if (infeasible_) return false;
  for (;;) {
    std::size_t leaving = npos;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t b = row_var_[r];
      if (b < leaving && violates(vars_[b])) leaving = b;
    }
    if (leaving == npos) return true;

    const Var& xb = vars_[leaving];
    const auto& row = rows_[xb.row];
    const bool raise = xb.lower && xb.value < *xb.lower;
    std::size_t entering = npos;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0 || vars_[j].basic) continue;
      const Var& xj = vars_[j];
      const bool can_increase = !xj.upper || xj.value < *xj.upper;
      const bool can_decrease = !xj.lower || xj.value > *xj.lower;
      const bool positive = row[j] > 0;
      if (raise ? (positive ? can_increase : can_decrease) : (positive ? can_decrease : can_increase)) {
        entering = j;
        break;
      }
    }
    if (entering == npos) {
      infeasible_ = true;
      return false;
    }
    pivot_and_update(leaving, entering, raise ? *xb.lower : *xb.upper);
  }
}

// ---------------------------------------------------------------------------
// Integer sampling

namespace {

struct Substitution {
  std::size_t var;
  AffineExpr value;  // var = value, with value.coeff(var) == 0
};

// Replaces `var` by `value` in `c`.
Constraint substitute(const Constraint& c, std::size_t var, const AffineExpr& value) {
  Constraint r = c;
  const Integer a = c.expr.coeff(var);
  if (a == 0) return r;
  r.expr.coeff(var) = 0;
  r.expr += value * a;
  return r;
}

// Eliminates unit-coefficient equalities exactly. Returns false on a contradiction.
bool eliminate_unit_equalities(std::vector<Constraint>& cs, std::vector<Substitution>& substs,
                               std::size_t n_candidates) {
  for (;;) {
    std::size_t which = npos;
    std::size_t var = npos;
    for (std::size_t i = 0; i < cs.size() && which == npos; ++i) {
      if (!cs[i].is_equality()) continue;
      for (std::size_t j = 0; j < n_candidates; ++j) {
        const auto& a = cs[i].expr.coeff(j);
        if (a == 1 || a == -1) {
          which = i;
          var = j;
          break;
        }
      }
    }
    if (which == npos) return true;

    AffineExpr value = cs[which].expr;
    const Integer a = value.coeff(var);
    value.coeff(var) = 0;
    value *= Integer(-a);  // a = +-1, so 1/a == a
    cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(which));

    std::vector<Constraint> next;
    next.reserve(cs.size());
    for (const auto& c : cs) {
      Constraint s = substitute(c, var, value);
      switch (s.normalize()) {
        case Constraint::Triviality::AlwaysFalse:
          return false;
        case Constraint::Triviality::AlwaysTrue:
          break;
        case Constraint::Triviality::NonTrivial:
          next.push_back(std::move(s));
      }
    }
    cs = std::move(next);
    substs.push_back({var, std::move(value)});
  }
}

}  // namespace

std::optional<std::vector<Integer>> integer_sample(const Conjunction& c, const SolverOptions& opts) {
  if (c.is_infeasible()) return std::nullopt;
  const std::size_t n = c.n_columns();
  std::vector<Constraint> cs = c.constraints();
  std::vector<Substitution> substs;
  if (!eliminate_unit_equalities(cs, substs, n)) return std::nullopt;

  Simplex root(n);
  for (const auto& k : cs) {
    if (!root.add(k)) return std::nullopt;
  }

  std::vector<Simplex> stack;
  stack.push_back(std::move(root));
  std::size_t nodes = 0;
  std::optional<std::vector<Integer>> found;
  while (!stack.empty() && !found) {
    if (++nodes > opts.node_budget) {
      throw UnboundedSearch("branch-and-bound exceeded " + std::to_string(opts.node_budget) +
                            " nodes; instantiate parameters or bound the set");
    }
    Simplex s = std::move(stack.back());
    stack.pop_back();
    if (!s.check()) continue;
    std::size_t frac = npos;
    for (std::size_t j = 0; j < n; ++j) {
      if (!is_integral(s.value(j))) {
        frac = j;
        break;
      }
    }
    if (frac == npos) {
      std::vector<Integer> values(n);
      for (std::size_t j = 0; j < n; ++j) values[j] = boost::multiprecision::numerator(s.value(j));
      found = std::move(values);
      break;
    }
    const Rational v = s.value(frac);
    Simplex up = s;
    if (up.set_lower(frac, Rational(ceil(v)))) stack.push_back(std::move(up));
    if (s.set_upper(frac, Rational(floor(v)))) stack.push_back(std::move(s));
  }
  if (!found) return std::nullopt;
  auto& values = *found;
  for (auto it = substs.rbegin(); it != substs.rend(); ++it) values[it->var] = it->value.evaluate(values);
  return found;
}

// ---------------------------------------------------------------------------
// Enumeration by Fourier-Motzkin scanning

namespace {

constexpr std::size_t kMaxProjectedConstraints = 20000;

// Drops duplicates and inequalities dominated by a parallel tighter one.
void simplify(std::vector<Constraint>& cs) {
  std::sort(cs.begin(), cs.end(), [](const Constraint& a, const Constraint& b) {
    if (a.kind != b.kind) return a.is_equality();
    for (std::size_t i = 0; i < a.expr.size(); ++i) {
      if (a.expr.coeff(i) != b.expr.coeff(i)) return a.expr.coeff(i) < b.expr.coeff(i);
    }
    return a.expr.constant_term() < b.expr.constant_term();
  });
  std::vector<Constraint> out;
  out.reserve(cs.size());
  for (auto& c : cs) {
    if (!out.empty() && out.back().kind == c.kind) {
      const auto& prev = out.back();
      bool same_coeffs = std::equal(prev.expr.coeffs().begin(), prev.expr.coeffs().end(), c.expr.coeffs().begin());
      if (same_coeffs) {
        // Sorted by constant: for inequalities the first one is tightest.
        if (!c.is_equality() || prev.expr.constant_term() == c.expr.constant_term()) continue;
      }
    }
    out.push_back(std::move(c));
  }
  cs = std::move(out);
}

// Projects out `var`. Returns false when the projection is infeasible.
bool eliminate(std::vector<Constraint>& cs, std::size_t var) {
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto& a = cs[i].expr.coeff(var);
    if (cs[i].is_equality() && (a == 1 || a == -1)) {
      AffineExpr value = cs[i].expr;
      const Integer sign = a;
      value.coeff(var) = 0;
      value *= Integer(-sign);
      std::vector<Constraint> next;
      for (std::size_t k = 0; k < cs.size(); ++k) {
        if (k == i) continue;
        Constraint s = substitute(cs[k], var, value);
        switch (s.normalize()) {
          case Constraint::Triviality::AlwaysFalse:
            return false;
          case Constraint::Triviality::AlwaysTrue:
            break;
          case Constraint::Triviality::NonTrivial:
            next.push_back(std::move(s));
        }
      }
      cs = std::move(next);
      simplify(cs);
      return true;
    }
  }

  std::vector<AffineExpr> lower;
  std::vector<AffineExpr> upper;
  std::vector<Constraint> next;
  for (auto& c : cs) {
    const Integer a = c.expr.coeff(var);
    if (a == 0) {
      next.push_back(std::move(c));
      continue;
    }
    if (c.is_equality()) {
      lower.push_back(a > 0 ? c.expr : -c.expr);
      upper.push_back(a > 0 ? -c.expr : c.expr);
    } else if (a > 0) {
      lower.push_back(std::move(c.expr));
    } else {
      upper.push_back(std::move(c.expr));
    }
  }
  for (const auto& l : lower) {
    for (const auto& u : upper) {
      AffineExpr combined = l * Integer(-u.coeff(var)) + u * l.coeff(var);
      Constraint k = Constraint::ge(std::move(combined));
      switch (k.normalize()) {
        case Constraint::Triviality::AlwaysFalse:
          return false;
        case Constraint::Triviality::AlwaysTrue:
          break;
        case Constraint::Triviality::NonTrivial:
          next.push_back(std::move(k));
      }
    }
  }
  simplify(next);
  if (next.size() > kMaxProjectedConstraints) {
    throw ComplexityCap("projection produced " + std::to_string(next.size()) + " constraints");
  }
  cs = std::move(next);
  return true;
}

class Scanner {
 public:
  Scanner(std::vector<std::vector<Constraint>> levels, std::size_t n_dims, std::size_t budget,
          std::vector<Point>& out)
      : levels_(std::move(levels)),
        n_dims_(n_dims),
        budget_(budget),
        node_cap_(budget * 64 + 1000000),
        out_(out),
        values_(levels_.size()) {}

  void run() {
    if (levels_.empty()) {
      emit();
      return;
    }
    scan(0);
  }

 private:
  // Returns true when at least one point was emitted below this level.
  bool scan(std::size_t k) {
    std::optional<Integer> lo;
    std::optional<Integer> hi;
    const auto& cs = levels_[k];
    if (cs.empty()) {
      if (k < n_dims_) throw Unbounded("dimension " + std::to_string(k) + " has no finite bound");
      lo = hi = Integer(0);  // unconstrained existential
    }
    for (const auto& c : cs) {
      const Integer& a = c.expr.coeff(k);
      Integer rest = c.expr.constant_term();
      for (std::size_t j = 0; j < k; ++j) {
        if (c.expr.coeff(j) != 0) rest += c.expr.coeff(j) * values_[j];
      }
      if (c.is_equality()) {
        if (rest % a != 0) return false;
        Integer v = -rest / a;
        if (!lo || v > *lo) lo = v;
        if (!hi || v < *hi) hi = v;
      } else if (a > 0) {
        Integer v = ceil_div(-rest, a);
        if (!lo || v > *lo) lo = v;
      } else {
        Integer v = floor_div(rest, -a);
        if (!hi || v < *hi) hi = v;
      }
    }
    const bool existential = k >= n_dims_;
    if (!lo || !hi) {
      if (!existential || (!lo && !hi)) throw Unbounded("column " + std::to_string(k) + " has no finite bound");
      if (!lo) lo = *hi;
      if (!hi) hi = *lo;
    }
    bool any = false;
    for (Integer v = *lo; v <= *hi; ++v) {
      if (++nodes_ > node_cap_) throw BudgetExceeded("enumeration visited too many candidate points");
      values_[k] = v;
      bool found = true;
      if (k + 1 == levels_.size()) {
        emit();
      } else {
        found = scan(k + 1);
      }
      any = any || found;
      // One witness per existential assignment suffices.
      if (existential && any) break;
    }
    return any;
  }

  void emit() {
    Point p(n_dims_);
    for (std::size_t i = 0; i < n_dims_; ++i) p[i] = to_int64(values_[i]);
    out_.push_back(std::move(p));
    if (out_.size() > budget_) throw BudgetExceeded("more than " + std::to_string(budget_) + " points");
  }

  std::vector<std::vector<Constraint>> levels_;
  std::size_t n_dims_;
  std::size_t budget_;
  std::size_t node_cap_;
  std::size_t nodes_ = 0;
  std::vector<Point>& out_;
  std::vector<Integer> values_;
};

}  // namespace

void enumerate_conjunction(const Conjunction& c, std::size_t n_dims, std::size_t budget, std::vector<Point>& out) {
  if (c.is_infeasible()) return;
  const std::size_t m = c.n_columns();
  std::vector<Constraint> cs = c.constraints();
  simplify(cs);
  // levels[k]: constraints of the projection on columns 0..k that involve column k.
  std::vector<std::vector<Constraint>> levels(m);
  for (std::size_t k = m; k-- > 0;) {
    for (const auto& k_c : cs) {
      if (k_c.expr.coeff(k) != 0) levels[k].push_back(k_c);
    }
    if (!eliminate(cs, k)) return;
  }
  for (const auto& rest : cs) {
    const auto& k = rest.expr.constant_term();
    if (rest.is_equality() ? k != 0 : k < 0) return;
  }
  Scanner(std::move(levels), n_dims, budget, out).run();
}

}  // namespace ppnfifo::presburger
