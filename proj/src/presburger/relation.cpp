#include "ppnfifo/presburger/relation.hpp"

#include <numeric>

#include "ppnfifo/errors.hpp"
#include "ppnfifo/presburger/text.hpp"

namespace ppnfifo::presburger {

namespace {

std::vector<std::string> disjoint_dims(const std::vector<std::string>& in_dims, std::vector<std::string> out_dims,
                                       const std::vector<std::string>& others) {
  std::vector<std::string> taken = in_dims;
  taken.insert(taken.end(), others.begin(), others.end());
  for (auto& name : out_dims) {
    name = fresh_name(name, taken);
    taken.push_back(name);
  }
  return out_dims;
}

}  // namespace

IntegerRelation::IntegerRelation(std::vector<std::string> in_dims, std::vector<std::string> out_dims,
                                 std::vector<std::string> params, std::vector<std::string> existentials)
    : n_in_(in_dims.size()) {
  std::vector<std::string> others = params;
  others.insert(others.end(), existentials.begin(), existentials.end());
  std::vector<std::string> dims = in_dims;
  auto out = disjoint_dims(in_dims, std::move(out_dims), others);
  dims.insert(dims.end(), out.begin(), out.end());
  wrapped_ = IntegerSet(Space(std::move(dims), std::move(params), std::move(existentials)));
}

IntegerRelation IntegerRelation::from_set(IntegerSet wrapped, std::size_t n_in) {
  if (n_in > wrapped.space().n_dims()) throw SpaceMismatch("relation input arity exceeds the set arity");
  IntegerRelation r;
  r.wrapped_ = std::move(wrapped);
  r.n_in_ = n_in;
  return r;
}

IntegerRelation IntegerRelation::universe(std::vector<std::string> in_dims, std::vector<std::string> out_dims,
                                          std::vector<std::string> params) {
  IntegerRelation r(std::move(in_dims), std::move(out_dims), std::move(params));
  r.wrapped_ = IntegerSet::universe(r.wrapped_.space());
  return r;
}

std::vector<std::string> IntegerRelation::in_dims() const {
  const auto& d = wrapped_.space().dims();
  return {d.begin(), d.begin() + static_cast<std::ptrdiff_t>(n_in_)};
}

std::vector<std::string> IntegerRelation::out_dims() const {
  const auto& d = wrapped_.space().dims();
  return {d.begin() + static_cast<std::ptrdiff_t>(n_in_), d.end()};
}

IntegerRelation IntegerRelation::intersect(const IntegerRelation& o, const SolverOptions& opts) const {
  if (o.n_in_ != n_in_) throw SpaceMismatch("intersect: relations have different input arity");
  return from_set(wrapped_.intersect(o.wrapped_, opts), n_in_);
}

IntegerRelation IntegerRelation::intersect(const IntegerSet& s, const SolverOptions& opts) const {
  return from_set(wrapped_.intersect(s, opts), n_in_);
}

IntegerRelation IntegerRelation::intersect_domain(const IntegerSet& in_set, const IntegerSet& out_set,
                                                  const SolverOptions& opts) const {
  const Space& ws = wrapped_.space();
  if (in_set.space().n_dims() != n_in_ || out_set.space().n_dims() != n_out()) {
    throw SpaceMismatch("intersect_domain: arity mismatch");
  }
  if (in_set.space().n_existentials() != 0 || out_set.space().n_existentials() != 0) {
    throw SpaceMismatch("intersect_domain: domains with existentials are not supported");
  }
  auto lift = [&](const IntegerSet& s, std::size_t offset) {
    IntegerSet aligned = s.align_params(ws.params());
    std::vector<std::size_t> mapping(aligned.n_columns());
    for (std::size_t i = 0; i < aligned.space().n_dims(); ++i) mapping[i] = offset + i;
    for (std::size_t p = 0; p < ws.n_params(); ++p) mapping[aligned.space().param_column(p)] = ws.param_column(p);
    return aligned.embed(ws, mapping);
  };
  IntegerSet r = wrapped_.intersect(lift(in_set, 0), opts).intersect(lift(out_set, n_in_), opts);
  return from_set(std::move(r), n_in_);
}

IntegerRelation IntegerRelation::unite(const IntegerRelation& o) const {
  if (o.n_in_ != n_in_) throw SpaceMismatch("union: relations have different input arity");
  return from_set(wrapped_.unite(o.wrapped_), n_in_);
}

IntegerRelation IntegerRelation::instantiate(const ParamAssignment& pa) const {
  return from_set(wrapped_.instantiate(pa), n_in_);
}

IntegerRelation IntegerRelation::renamed(std::vector<std::string> in_dims,
                                         std::vector<std::string> out_dims) const {
  if (in_dims.size() != n_in_ || out_dims.size() != n_out()) throw SpaceMismatch("rename: arity mismatch");
  auto out = disjoint_dims(in_dims, std::move(out_dims), params());
  std::vector<std::string> dims = std::move(in_dims);
  dims.insert(dims.end(), out.begin(), out.end());
  return from_set(wrapped_.renamed(std::move(dims)), n_in_);
}

IntegerRelation IntegerRelation::align_params(const std::vector<std::string>& params) const {
  return from_set(wrapped_.align_params(params), n_in_);
}

std::vector<PointPair> IntegerRelation::enumerate_pairs(std::size_t budget) const {
  std::vector<PointPair> out;
  for (auto& p : wrapped_.enumerate_points(budget)) {
    Point in(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(n_in_));
    Point o(p.begin() + static_cast<std::ptrdiff_t>(n_in_), p.end());
    out.emplace_back(std::move(in), std::move(o));
  }
  return out;
}

std::string IntegerRelation::to_string() const { return format_relation(*this); }

bool is_empty(const IntegerRelation& r, const SolverOptions& opts) { return r.is_empty(opts); }
IntegerRelation intersect(const IntegerRelation& a, const IntegerRelation& b, const SolverOptions& opts) {
  return a.intersect(b, opts);
}
IntegerRelation unite(const IntegerRelation& a, const IntegerRelation& b) { return a.unite(b); }
IntegerRelation instantiate(const IntegerRelation& r, const ParamAssignment& pa) { return r.instantiate(pa); }

}  // namespace ppnfifo::presburger
