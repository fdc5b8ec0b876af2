#include "ppnfifo/patterns/patterns.hpp"

#include <algorithm>

#include "ppnfifo/errors.hpp"

namespace ppnfifo::patterns {

using presburger::AffineExpr;
using presburger::Conjunction;
using presburger::Constraint;
using presburger::Integer;
using presburger::Space;

PatternClass quadrant(bool in_order, bool unicity) {
  if (in_order) return unicity ? PatternClass::Fifo : PatternClass::InOrderWithMultiplicity;
  return unicity ? PatternClass::OutOfOrderNoMultiplicity : PatternClass::OutOfOrderWithMultiplicity;
}

std::string to_string(PatternClass c) {
  switch (c) {
    case PatternClass::Fifo:
      return "Fifo";
    case PatternClass::InOrderWithMultiplicity:
      return "InOrderWithMultiplicity";
    case PatternClass::OutOfOrderNoMultiplicity:
      return "OutOfOrderNoMultiplicity";
    case PatternClass::OutOfOrderWithMultiplicity:
      return "OutOfOrderWithMultiplicity";
  }
  return "?";
}

PatternClass pattern_from_string(std::string_view s) {
  for (auto c : {PatternClass::Fifo, PatternClass::InOrderWithMultiplicity, PatternClass::OutOfOrderNoMultiplicity,
                 PatternClass::OutOfOrderWithMultiplicity}) {
    if (to_string(c) == s) return c;
  }
  throw ParseError("unknown pattern class '" + std::string(s) + "'");
}

namespace {

// Moves a schedule row into `target`, its dims starting at column `offset`.
AffineExpr embed_row(const AffineExpr& row, const Space& from, const Space& target, std::size_t offset,
                     const ParamAssignment& pa) {
  AffineExpr e(target.n_columns());
  e.constant_term() = row.constant_term();
  for (std::size_t d = 0; d < from.n_dims(); ++d) e.coeff(offset + d) += row.coeff(d);
  for (std::size_t p = 0; p < from.n_params(); ++p) {
    const Integer& c = row.coeff(from.param_column(p));
    if (c == 0) continue;
    const std::string& name = from.params()[p];
    const auto& tp = target.params();
    auto it = std::find(tp.begin(), tp.end(), name);
    if (it != tp.end()) {
      e.coeff(target.param_column(static_cast<std::size_t>(it - tp.begin()))) += c;
    } else {
      auto v = pa.find(name);
      if (v == pa.end()) throw MissingParameter("no value given for parameter " + name);
      e.constant_term() += c * v->second;
    }
  }
  return e;
}

std::vector<AffineExpr> embed_rows(const Schedule& s, const Space& target, std::size_t offset,
                                   const ParamAssignment& pa) {
  std::vector<AffineExpr> out;
  for (const auto& r : s.rows) out.push_back(embed_row(r, s.input_space, target, offset, pa));
  return out;
}

// Disjuncts encoding a <mode> b.
std::vector<std::vector<Constraint>> compare(const std::vector<AffineExpr>& a, const std::vector<AffineExpr>& b,
                                             LexMode mode, std::size_t k) {
  const std::size_t d = a.size();
  if (b.size() != d) throw SpaceMismatch("compared timestamps have different lengths");
  auto at_depth = [&](std::size_t depth) {
    std::vector<Constraint> c;
    for (std::size_t i = 0; i + 1 < depth; ++i) c.push_back(Constraint::eq(a[i] - b[i]));
    c.push_back(Constraint::lt(a[depth - 1], b[depth - 1]));
    return c;
  };
  auto equal_first = [&](std::size_t n) {
    std::vector<Constraint> c;
    for (std::size_t i = 0; i < n; ++i) c.push_back(Constraint::eq(a[i] - b[i]));
    return c;
  };
  switch (mode) {
    case LexMode::PrecedesAtDepth:
      if (k < 1 || k > d) throw DepthOutOfRange("depth " + std::to_string(k) + " outside 1.." + std::to_string(d));
      return {at_depth(k)};
    case LexMode::EqualFirst:
      if (k > d) throw DepthOutOfRange("depth " + std::to_string(k) + " exceeds " + std::to_string(d));
      return {equal_first(k)};
    case LexMode::StrictlyPrecedes: {
      std::vector<std::vector<Constraint>> out;
      for (std::size_t depth = 1; depth <= d; ++depth) out.push_back(at_depth(depth));
      return out;
    }
    case LexMode::Equal:
      return {equal_first(d)};
  }
  return {};
}

IntegerSet from_disjuncts(const Space& space, const std::vector<std::vector<Constraint>>& ds) {
  IntegerSet s(space);
  for (const auto& d : ds) {
    Conjunction c(space.n_columns());
    for (const auto& k : d) c.add(k);
    s.add_disjunct(std::move(c));
  }
  return s;
}

void check_arity(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc) {
  if (sp.input_space.n_dims() != rel.n_in() || sc.input_space.n_dims() != rel.n_out()) {
    throw SpaceMismatch("schedule arity does not match the relation");
  }
}

// Instantiates when `pa` is given; otherwise requires a parameter-free relation.
IntegerRelation prepare(const IntegerRelation& rel, const std::optional<ParamAssignment>& pa) {
  if (pa) return rel.instantiate(*pa);
  if (rel.wrapped().references_params()) {
    throw MissingParameter("relation depends on parameters " + [&] {
      std::string s;
      for (const auto& p : rel.params()) s += (s.empty() ? "" : ", ") + p;
      return s;
    }() + "; instantiate them first");
  }
  return IntegerRelation::from_set(rel.wrapped().drop_params(), rel.n_in());
}

// The relation twice over disjoint columns: (x, x', y, y').
struct Product {
  Space space;
  IntegerSet set;
  std::size_t n_in;
  std::size_t n_out;
  std::size_t second;  // first column of (y, y')
};

Product self_product(const IntegerRelation& rel) {
  const Space& s = rel.wrapped().space();
  const std::size_t nd = s.n_dims();
  const std::size_t ne = s.n_existentials();
  std::vector<std::string> dims = s.dims();
  std::vector<std::string> taken = s.dims();
  taken.insert(taken.end(), s.existentials().begin(), s.existentials().end());
  taken.insert(taken.end(), s.params().begin(), s.params().end());
  for (const auto& d : s.dims()) {
    dims.push_back(presburger::fresh_name(d, taken));
    taken.push_back(dims.back());
  }
  std::vector<std::string> ex = s.existentials();
  for (const auto& e : s.existentials()) {
    ex.push_back(presburger::fresh_name(e, taken));
    taken.push_back(ex.back());
  }
  Space space(dims, s.params(), ex);
  std::vector<std::size_t> first(s.n_columns());
  std::vector<std::size_t> second(s.n_columns());
  for (std::size_t i = 0; i < nd; ++i) {
    first[i] = i;
    second[i] = nd + i;
  }
  for (std::size_t i = 0; i < ne; ++i) {
    first[nd + i] = space.existential_column(i);
    second[nd + i] = space.existential_column(ne + i);
  }
  for (std::size_t p = 0; p < s.n_params(); ++p) {
    first[s.param_column(p)] = second[s.param_column(p)] = space.param_column(p);
  }
  IntegerSet a = rel.wrapped().embed(space, first);
  IntegerSet b = rel.wrapped().embed(space, second);
  return {space, a.intersect(b), rel.n_in(), rel.n_out(), nd};
}

}  // namespace

IntegerSet lex_compare_set(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc, LexMode mode,
                           std::size_t k, const ParamAssignment& pa) {
  check_arity(rel, sp, sc);
  const Space& space = rel.wrapped().space();
  auto a = embed_rows(sp, space, 0, pa);
  auto b = embed_rows(sc, space, rel.n_in(), pa);
  return from_disjuncts(space, compare(a, b, mode, k));
}

bool in_order(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc,
              const std::optional<ParamAssignment>& pa) {
  check_arity(rel, sp, sc);
  IntegerRelation r = prepare(rel, pa);
  if (r.is_empty()) return true;
  const ParamAssignment values = pa.value_or(ParamAssignment{});
  Product prod = self_product(r);
  // Violation: x' consumed before y' while y was produced before x.
  auto cx = embed_rows(sc, prod.space, prod.n_in, values);
  auto cy = embed_rows(sc, prod.space, prod.second + prod.n_in, values);
  auto px = embed_rows(sp, prod.space, 0, values);
  auto py = embed_rows(sp, prod.space, prod.second, values);
  IntegerSet consumed = from_disjuncts(prod.space, compare(cx, cy, LexMode::StrictlyPrecedes, 0));
  IntegerSet produced = from_disjuncts(prod.space, compare(py, px, LexMode::StrictlyPrecedes, 0));
  presburger::SolverOptions opts;
  opts.disjunct_cap = 4096;
  return prod.set.intersect(consumed, opts).intersect(produced, opts).is_empty();
}

bool unicity(const IntegerRelation& rel, const std::optional<ParamAssignment>& pa) {
  IntegerRelation r = prepare(rel, pa);
  if (r.is_empty()) return true;
  Product prod = self_product(r);
  std::vector<AffineExpr> x;
  std::vector<AffineExpr> y;
  std::vector<AffineExpr> xo;
  std::vector<AffineExpr> yo;
  const std::size_t n = prod.space.n_columns();
  for (std::size_t i = 0; i < prod.n_in; ++i) {
    x.push_back(AffineExpr::column(n, i));
    y.push_back(AffineExpr::column(n, prod.second + i));
  }
  for (std::size_t i = 0; i < prod.n_out; ++i) {
    xo.push_back(AffineExpr::column(n, prod.n_in + i));
    yo.push_back(AffineExpr::column(n, prod.second + prod.n_in + i));
  }
  // Same write, two distinct reads (ordered to halve the disjuncts).
  IntegerSet same = from_disjuncts(prod.space, compare(x, y, LexMode::Equal, 0));
  IntegerSet distinct = from_disjuncts(prod.space, compare(xo, yo, LexMode::StrictlyPrecedes, 0));
  return prod.set.intersect(same).intersect(distinct).is_empty();
}

Verdict classify(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc,
                 const std::optional<ParamAssignment>& pa) {
  Verdict v;
  v.in_order = in_order(rel, sp, sc, pa);
  v.unicity = unicity(rel, pa);
  v.pattern = quadrant(v.in_order, v.unicity);
  return v;
}

Verdict classify(const ppn::PPN& net, const ppn::Channel& c, const std::optional<ParamAssignment>& pa) {
  return classify(c.dataflow, net.process(c.producer).schedule, net.process(c.consumer).schedule, pa);
}

}  // namespace ppnfifo::patterns
