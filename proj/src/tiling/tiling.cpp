#include "ppnfifo/tiling/tiling.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "ppnfifo/errors.hpp"

namespace ppnfifo::tiling {

using presburger::AffineExpr;
using presburger::Constraint;
using presburger::Integer;
using presburger::IntegerRelation;
using presburger::IntegerSet;
using presburger::Space;

std::size_t integer_rank(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.empty()) return 0;
  const std::size_t n_cols = rows.front().size();
  std::vector<std::vector<presburger::Rational>> m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n_cols && rank < m.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][col] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (m[r][col] == 0) continue;
      const presburger::Rational f = m[r][col] / m[rank][col];
      for (std::size_t c = col; c < n_cols; ++c) m[r][c] -= f * m[rank][c];
    }
    ++rank;
  }
  return rank;
}

void validate(const Tiling& t, std::size_t n_dims) {
  if (t.normals.empty()) throw InvalidTiling("tiling has no normals");
  if (t.sizes.size() != t.normals.size()) throw InvalidTiling("tiling needs one size per normal");
  if (t.depth() > n_dims) throw InvalidTiling("more normals than dimensions");
  for (const auto& n : t.normals) {
    if (n.size() != n_dims) throw InvalidTiling("normal length does not match the process dimensions");
  }
  for (auto b : t.sizes) {
    if (b < 1) throw InvalidTiling("tile sizes must be positive");
  }
  if (integer_rank(t.normals) != t.depth()) throw InvalidTiling("tiling normals are linearly dependent");
}

std::vector<std::string> tile_dim_names(std::size_t n, const std::vector<std::string>& taken) {
  std::vector<std::string> all = taken;
  std::vector<std::string> out;
  for (std::size_t k = 1; k <= n; ++k) {
    out.push_back(presburger::fresh_name("phi" + std::to_string(k), all));
    all.push_back(out.back());
  }
  return out;
}

namespace {

// 0 <= tau . x - b phi <= b - 1, with x at `x_col`.. and phi at `phi_col`.
void add_membership(IntegerSet& s, const Tiling& t, std::size_t phi_col, std::size_t x_col) {
  const std::size_t n = s.n_columns();
  for (std::size_t k = 0; k < t.depth(); ++k) {
    AffineExpr e(n);
    for (std::size_t d = 0; d < t.normals[k].size(); ++d) e.coeff(x_col + d) = t.normals[k][d];
    e.coeff(phi_col + k) = -t.sizes[k];
    s.add_constraint(Constraint::ge(e));
    s.add_constraint(Constraint::ge(-e + Integer(t.sizes[k] - 1)));
  }
}

}  // namespace

ppn::Process tile_process(const ppn::Process& p, const Tiling& t) {
  if (t.depth() == 0) return p;
  validate(t, p.dims().size());
  if (p.tile_depth != 0) throw InvalidTiling("process " + p.name + " is already tiled");
  const std::size_t n = t.depth();
  const Space& old = p.domain.space();
  std::vector<std::string> taken = old.dims();
  taken.insert(taken.end(), old.params().begin(), old.params().end());
  std::vector<std::string> dims = tile_dim_names(n, taken);
  dims.insert(dims.end(), old.dims().begin(), old.dims().end());
  Space space(dims, old.params());

  std::vector<std::size_t> mapping(old.n_columns());
  std::iota(mapping.begin(), mapping.end(), n);
  IntegerSet domain = p.domain.embed(space, mapping);
  add_membership(domain, t, 0, n);

  ppn::Process r = p;
  r.domain = std::move(domain);
  r.tile_depth = n;
  r.schedule.input_space = space;
  r.schedule.rows.clear();
  for (std::size_t k = 0; k < n; ++k) r.schedule.rows.push_back(AffineExpr::column(space.n_columns(), k));
  for (const auto& row : p.schedule.rows) r.schedule.rows.push_back(row.remap(space.n_columns(), mapping));
  return r;
}

ppn::Channel lift_relation(const ppn::Channel& c, const Tiling& tp, const Tiling& tc) {
  if (tp.depth() != 0 && tc.depth() != 0 && tp.depth() != tc.depth()) {
    throw DepthMismatch("channel " + c.id + ": producer and consumer are tiled with different depths");
  }
  const IntegerRelation& rel = c.dataflow;
  if (tp.depth() != 0) validate(tp, rel.n_in());
  if (tc.depth() != 0) validate(tc, rel.n_out());
  const std::size_t np = tp.depth();
  const std::size_t nc = tc.depth();
  const Space& old = rel.wrapped().space();

  std::vector<std::string> in_dims = rel.in_dims();
  std::vector<std::string> out_dims = rel.out_dims();
  std::vector<std::string> taken = in_dims;
  taken.insert(taken.end(), out_dims.begin(), out_dims.end());
  taken.insert(taken.end(), old.params().begin(), old.params().end());
  taken.insert(taken.end(), old.existentials().begin(), old.existentials().end());
  auto phis = tile_dim_names(np + nc, taken);
  std::vector<std::string> dims(phis.begin(), phis.begin() + static_cast<std::ptrdiff_t>(np));
  dims.insert(dims.end(), in_dims.begin(), in_dims.end());
  dims.insert(dims.end(), phis.begin() + static_cast<std::ptrdiff_t>(np), phis.end());
  dims.insert(dims.end(), out_dims.begin(), out_dims.end());
  Space space(dims, old.params(), old.existentials());

  const std::size_t n_in = rel.n_in();
  std::vector<std::size_t> mapping(old.n_columns());
  for (std::size_t i = 0; i < n_in; ++i) mapping[i] = np + i;
  for (std::size_t i = n_in; i < old.n_columns(); ++i) mapping[i] = np + nc + i;
  IntegerSet s = rel.wrapped().embed(space, mapping);
  add_membership(s, tp, 0, np);
  add_membership(s, tc, np + n_in, np + n_in + nc);

  ppn::Channel r = c;
  r.dataflow = IntegerRelation::from_set(std::move(s), np + n_in);
  return r;
}

ppn::PPN tile_network(const ppn::PPN& net, const TilingMap& tilings) {
  for (const auto& [name, t] : tilings) {
    const auto* p = net.find_process(name);
    if (!p) throw ValidationError("tiling names unknown process '" + name + "'");
    validate(t, p->dims().size());
  }
  ppn::PPN r = net;
  static const Tiling none;
  auto tiling_of = [&](const std::string& name) -> const Tiling& {
    auto it = tilings.find(name);
    return it == tilings.end() ? none : it->second;
  };
  for (auto& p : r.processes) p = tile_process(p, tiling_of(p.name));
  for (auto& c : r.channels) {
    c = lift_relation(c, tiling_of(c.producer), tiling_of(c.consumer));
    c.dataflow = c.dataflow.renamed(r.process(c.producer).dims(), r.process(c.consumer).dims());
  }
  return r;
}

TilingMap parse_tilings(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed tiling JSON: ") + e.what());
  }
  const json& entries = j.is_object() && j.contains("tilings") ? j.at("tilings") : j;
  if (!entries.is_array()) throw ParseError("tiling file must hold a list of {process, normals, sizes}");
  TilingMap out;
  for (const auto& e : entries) {
    try {
      auto name = e.at("process").get<std::string>();
      Tiling t{e.at("normals").get<std::vector<std::vector<std::int64_t>>>(), e.at("sizes").get<std::vector<std::int64_t>>()};
      if (!out.emplace(name, std::move(t)).second) throw ValidationError("process " + name + " tiled twice");
    } catch (const json::exception& ex) {
      throw ParseError(std::string("bad tiling entry: ") + ex.what());
    }
  }
  return out;
}

TilingMap load_tilings(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tilings(buf.str());
}

std::string dump_tilings(const TilingMap& tilings) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [name, t] : tilings) j.push_back({{"process", name}, {"normals", t.normals}, {"sizes", t.sizes}});
  return nlohmann::json{{"tilings", j}}.dump(2) + "\n";
}

}  // namespace ppnfifo::tiling
