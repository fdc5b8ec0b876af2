#include "ppnfifo/splitter/splitter.hpp"

#include "json.hpp"
#include "ppnfifo/errors.hpp"

namespace ppnfifo::splitter {

using patterns::LexMode;
using patterns::lex_compare_set;
using presburger::AffineExpr;

namespace {

bool is_tile_row(const AffineExpr& row, std::size_t k) {
  if (row.constant_term() != 0) return false;
  for (std::size_t c = 0; c < row.size(); ++c) {
    if (row.coeff(c) != (c == k ? 1 : 0)) return false;
  }
  return true;
}

bool empty_at(const IntegerRelation& r, const std::optional<ParamAssignment>& pa) {
  return pa ? r.instantiate(*pa).is_empty() : r.is_empty();
}

}  // namespace

void check_shape(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc, std::size_t n) {
  if (n == 0) throw BadScheduleShape("split needs at least one tiling hyperplane");
  if (sp.n_rows() != sc.n_rows()) throw BadScheduleShape("producer and consumer schedules differ in length");
  if (sp.input_space.n_dims() != rel.n_in() || sc.input_space.n_dims() != rel.n_out()) {
    throw BadScheduleShape("schedule arity does not match the relation");
  }
  if (sp.n_rows() < n || rel.n_in() < n || rel.n_out() < n) throw BadScheduleShape("schedule shorter than the tiling depth");
  for (std::size_t k = 0; k < n; ++k) {
    if (!is_tile_row(sp.rows[k], k) || !is_tile_row(sc.rows[k], k)) {
      throw BadScheduleShape("schedule row " + std::to_string(k + 1) + " is not the tile coordinate");
    }
  }
}

std::string part_suffix(std::size_t k, std::size_t n) { return k < n ? ".d" + std::to_string(k + 1) : ".intra"; }

SplitResult split(const IntegerRelation& rel, const Schedule& sp, const Schedule& sc, std::size_t n,
                  const std::optional<ParamAssignment>& pa) {
  check_shape(rel, sp, sc, n);
  const ParamAssignment values = pa.value_or(ParamAssignment{});
  SplitResult r;
  for (std::size_t k = 1; k <= n; ++k) r.parts.push_back(rel.intersect(lex_compare_set(rel, sp, sc, LexMode::PrecedesAtDepth, k, values)));
  r.parts.push_back(rel.intersect(lex_compare_set(rel, sp, sc, LexMode::EqualFirst, n, values)));
  for (const auto& p : r.parts) r.nonempty_mask.push_back(!empty_at(p, pa));

  // Consumer tile strictly before producer tile: equal on the first k-1
  // tile coordinates, producer's k-th coordinate larger.
  r.residual = IntegerRelation(rel.in_dims(), rel.out_dims(), rel.params(), rel.wrapped().space().existentials());
  const std::size_t nc = rel.wrapped().n_columns();
  for (std::size_t k = 1; k <= n; ++k) {
    auto prefix = lex_compare_set(rel, sp, sc, LexMode::EqualFirst, k - 1, values);
    AffineExpr diff = AffineExpr::column(nc, k - 1) - AffineExpr::column(nc, rel.n_in() + k - 1);
    prefix.add_constraint(presburger::Constraint::ge(diff - presburger::Integer(1)));
    r.residual = r.residual.unite(rel.intersect(prefix));
  }
  r.residual_empty = empty_at(r.residual, pa);
  return r;
}

std::string to_string(Action a) {
  switch (a) {
    case Action::Replaced:
      return "replaced";
    case Action::Kept:
      return "kept";
    case Action::Skipped:
      return "skipped";
  }
  return "?";
}

const ChannelLog* FifoizeLog::find(const std::string& id) const {
  for (const auto& c : channels) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::string FifoizeLog::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : channels) {
    nlohmann::json parts = nlohmann::json::array();
    for (const auto& p : c.parts) {
      parts.push_back({{"suffix", p.suffix}, {"class", patterns::to_string(p.pattern)}, {"size", p.size}});
    }
    j.push_back({{"id", c.id}, {"action", to_string(c.action)}, {"reason", c.reason}, {"parts", parts}});
  }
  return j.dump(2);
}

FifoizeLog FifoizeLog::from_json(const std::string& text) {
  FifoizeLog log;
  try {
    for (const auto& cj : nlohmann::json::parse(text)) {
      ChannelLog c;
      c.id = cj.at("id").get<std::string>();
      const auto action = cj.at("action").get<std::string>();
      if (action == "replaced") {
        c.action = Action::Replaced;
      } else if (action == "kept") {
        c.action = Action::Kept;
      } else if (action == "skipped") {
        c.action = Action::Skipped;
      } else {
        throw ParseError("unknown action '" + action + "'");
      }
      c.reason = cj.value("reason", "");
      for (const auto& pj : cj.at("parts")) {
        c.parts.push_back({pj.at("suffix").get<std::string>(), patterns::pattern_from_string(pj.at("class").get<std::string>()),
                           pj.at("size").get<std::int64_t>()});
      }
      log.channels.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed fifoize log: ") + e.what());
  }
  return log;
}

std::pair<ppn::PPN, FifoizeLog> fifoize_tiled(const ppn::PPN& tiled, const ParamAssignment& pa) {
  tiled.require_params(pa);
  ppn::PPN out = tiled;
  out.channels.clear();
  FifoizeLog log;
  for (const auto& c : tiled.channels) {
    ChannelLog entry{c.id, Action::Skipped, "", {}};
    const auto& prod = tiled.process(c.producer);
    const auto& cons = tiled.process(c.consumer);
    auto keep = [&](Action a, std::string why) {
      entry.action = a;
      entry.reason = std::move(why);
      out.channels.push_back(c);
      log.channels.push_back(std::move(entry));
    };
    if (prod.tile_depth == 0 || cons.tile_depth == 0) {
      keep(Action::Skipped, "untiled endpoint");
      continue;
    }
    if (prod.tile_depth != cons.tile_depth) {
      keep(Action::Skipped, "endpoints tiled to different depths");
      continue;
    }
    const std::size_t n = prod.tile_depth;
    SplitResult parts;
    try {
      parts = split(c.dataflow, prod.schedule, cons.schedule, n, pa);
    } catch (const BadScheduleShape& e) {
      keep(Action::Skipped, e.what());
      continue;
    }
    bool all_fifo = true;
    std::size_t nonempty = 0;
    std::vector<ppn::Channel> replacement;
    for (std::size_t k = 0; k < parts.parts.size(); ++k) {
      PartLog pl{part_suffix(k, n), PatternClass::Fifo, 0};
      if (parts.nonempty_mask[k]) {
        ++nonempty;
        auto inst = parts.parts[k].instantiate(pa);
        pl.size = static_cast<std::int64_t>(inst.enumerate_pairs().size());
        pl.pattern = patterns::classify(parts.parts[k], prod.schedule, cons.schedule, pa).pattern;
        all_fifo = all_fifo && pl.pattern == PatternClass::Fifo;
        replacement.push_back({c.id + pl.suffix, c.producer, c.consumer, parts.parts[k]});
      }
      entry.parts.push_back(pl);
    }
    if (!parts.residual_empty) {
      keep(Action::Kept, "some dependences run from a later tile to an earlier one");
    } else if (!all_fifo) {
      keep(Action::Kept, "some part is not a FIFO");
    } else if (nonempty <= 1) {
      keep(Action::Kept, "a single nonempty part");
    } else {
      entry.action = Action::Replaced;
      for (auto& r : replacement) out.channels.push_back(std::move(r));
      log.channels.push_back(std::move(entry));
    }
  }
  return {std::move(out), std::move(log)};
}

std::pair<ppn::PPN, FifoizeLog> fifoize(const ppn::PPN& net, const tiling::TilingMap& tilings,
                                        const ParamAssignment& pa) {
  return fifoize_tiled(tiling::tile_network(net, tilings), pa);
}

}  // namespace ppnfifo::splitter
