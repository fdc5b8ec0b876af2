#include "ppnfifo/cli/report.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "ppnfifo/errors.hpp"
#include "ppnfifo/oracle/oracle.hpp"
#include "ppnfifo/sizing/sizing.hpp"

namespace ppnfifo::cli {

using nlohmann::json;

std::string StageSummary::pct_fifo() const { return sizing::percent_string(n_fifo, n_channels); }

std::string StageSummary::pct_fifo_split() const {
  if (!n_fifo_split || !n_original) return "";
  return sizing::percent_string(*n_fifo_split, *n_original);
}

const ChannelRow* Stage::find(const std::string& id) const {
  for (const auto& c : channels) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

std::string SizeDelta::delta() const { return sizing::delta_string(fail, split); }

// ---------------------------------------------------------------------------
// JSON

namespace {

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

json stage_json(const Stage& s) {
  json rows = json::array();
  for (const auto& c : s.channels) {
    rows.push_back({{"id", c.id},
                    {"producer", c.producer},
                    {"consumer", c.consumer},
                    {"class", patterns::to_string(c.pattern)},
                    {"in_order", c.in_order},
                    {"unicity", c.unicity},
                    {"pairs", c.pairs},
                    {"maxlive", c.maxlive},
                    {"size", c.size},
                    {"oracle_agrees", optional_json(c.oracle_agrees)}});
  }
  const auto& m = s.summary;
  json summary{{"n_channels", m.n_channels},
               {"n_fifo", m.n_fifo},
               {"n_fifo_split", optional_json(m.n_fifo_split)},
               {"n_original", optional_json(m.n_original)},
               {"pct_fifo", m.pct_fifo()},
               {"pct_fifo_split", m.pct_fifo_split()},
               {"fifo_size", m.fifo_size},
               {"total_size", m.total_size}};
  return {{"name", s.name}, {"summary", summary}, {"channels", rows}};
}

Stage stage_from(const json& j) {
  Stage s;
  s.name = j.at("name").get<std::string>();
  const auto& m = j.at("summary");
  s.summary.n_channels = m.at("n_channels").get<std::int64_t>();
  s.summary.n_fifo = m.at("n_fifo").get<std::int64_t>();
  s.summary.n_fifo_split = optional_from<std::int64_t>(m, "n_fifo_split");
  s.summary.n_original = optional_from<std::int64_t>(m, "n_original");
  s.summary.fifo_size = m.at("fifo_size").get<std::int64_t>();
  s.summary.total_size = m.at("total_size").get<std::int64_t>();
  for (const auto& c : j.at("channels")) {
    s.channels.push_back({c.at("id").get<std::string>(), c.at("producer").get<std::string>(),
                          c.at("consumer").get<std::string>(),
                          patterns::pattern_from_string(c.at("class").get<std::string>()), c.at("in_order").get<bool>(),
                          c.at("unicity").get<bool>(), c.at("pairs").get<std::int64_t>(),
                          c.at("maxlive").get<std::int64_t>(), c.at("size").get<std::int64_t>(),
                          optional_from<bool>(c, "oracle_agrees")});
  }
  return s;
}

}  // namespace

std::string to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["network"] = r.network;
  j["params"] = r.params;
  j["tilings"] = json::parse(tiling::dump_tilings(r.tilings)).at("tilings");
  j["before"] = stage_json(r.before);
  j["after"] = r.after ? stage_json(*r.after) : json(nullptr);
  j["fifoize_log"] = r.log ? json::parse(r.log->to_json()) : json(nullptr);
  j["sizes"] = r.sizes ? json{{"size_fifo_fail", r.sizes->fail},
                              {"size_fifo_split", r.sizes->split},
                              {"delta", r.sizes->delta()}}
                       : json(nullptr);
  if (r.oracle_agreement) j["oracle_agreement"] = *r.oracle_agreement;
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  Report r;
  try {
    const json j = json::parse(text);
    r.command = j.at("command").get<std::string>();
    r.network = j.at("network").get<std::string>();
    auto params = j.at("params").get<std::map<std::string, std::int64_t>>();
    r.params = ParamAssignment(params.begin(), params.end());
    r.tilings = tiling::parse_tilings(json{{"tilings", j.at("tilings")}}.dump());
    r.before = stage_from(j.at("before"));
    if (!j.at("after").is_null()) r.after = stage_from(j.at("after"));
    if (!j.at("fifoize_log").is_null()) r.log = splitter::FifoizeLog::from_json(j.at("fifoize_log").dump());
    if (!j.at("sizes").is_null()) {
      r.sizes = SizeDelta{j.at("sizes").at("size_fifo_fail").get<std::int64_t>(),
                          j.at("sizes").at("size_fifo_split").get<std::int64_t>()};
    }
    r.oracle_agreement = optional_from<bool>(j, "oracle_agreement");
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

Report load_report(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return report_from_json(buf.str());
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::string cell = r[i];
      if (i + 1 < r.size()) cell.resize(width[i], ' ');
      line += (i ? "  " : "") + cell;
    }
    out << line << "\n";
  }
  return out.str();
}

std::string params_text(const ParamAssignment& pa) {
  std::string s;
  for (const auto& [k, v] : pa) s += (s.empty() ? "" : ",") + k + "=" + std::to_string(v);
  return s;
}

std::vector<std::string> summary_row(const Stage& s) {
  const auto& m = s.summary;
  const bool split = m.n_fifo_split.has_value();
  return {s.name,
          std::to_string(m.n_channels),
          std::to_string(m.n_fifo),
          split ? std::to_string(*m.n_fifo_split) : "-",
          m.pct_fifo(),
          split ? m.pct_fifo_split() : "-",
          std::to_string(m.fifo_size),
          std::to_string(m.total_size)};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string to_text(const Report& r) {
  std::ostringstream out;
  out << "network " << r.network << "  params " << params_text(r.params) << "\n";
  for (const auto& [name, t] : r.tilings) {
    out << "tiling " << name << ": normals";
    for (const auto& n : t.normals) out << " " << ppn::format_point(n);
    out << " sizes " << ppn::format_point(t.sizes) << "\n";
  }
  out << "\n";
  std::vector<std::vector<std::string>> summary{
      {"stage", "#channel", "#fifo", "#fifo-split", "%fifo", "%fifo-split", "fifo-size", "total-size"}};
  summary.push_back(summary_row(r.before));
  if (r.after) summary.push_back(summary_row(*r.after));
  out << table(summary);

  for (const Stage* s : {&r.before, r.after ? &*r.after : nullptr}) {
    if (!s) continue;
    out << "\n[" << s->name << "]\n";
    std::vector<std::vector<std::string>> rows{
        {"channel", "producer", "consumer", "class", "in-order", "unicity", "pairs", "maxlive", "size", "oracle"}};
    for (const auto& c : s->channels) {
      rows.push_back({c.id, c.producer, c.consumer, patterns::to_string(c.pattern), yes_no(c.in_order),
                      yes_no(c.unicity), std::to_string(c.pairs), std::to_string(c.maxlive), std::to_string(c.size),
                      c.oracle_agrees ? (*c.oracle_agrees ? "agree" : "DISAGREE") : "-"});
    }
    out << table(rows);
  }

  if (r.log) {
    out << "\n[fifoize]\n";
    for (const auto& c : r.log->channels) {
      out << c.id << ": " << splitter::to_string(c.action);
      if (!c.reason.empty()) out << " (" << c.reason << ")";
      for (const auto& p : c.parts) {
        out << "  " << p.suffix << "=" << (p.size ? patterns::to_string(p.pattern) : "empty") << "/" << p.size;
      }
      out << "\n";
    }
  }
  if (r.sizes) {
    out << "\n" << delta_table(r.network, *r.sizes);
  }
  out << "\n";
  if (r.oracle_agreement) out << "oracle agreement: " << yes_no(*r.oracle_agreement) << "\n";
  if (r.after && r.after->summary.n_fifo_split) {
    out << "note: #fifo-split and %fifo-split describe the split network, so they sit on its row\n";
  }
  out << "note: sizes are the simulated maxlive rounded up to a power of two\n";
  return out.str();
}

std::string delta_table(const std::string& network, const SizeDelta& d) {
  return table({{"kernel", "size-fifo-fail", "size-fifo-split", "delta"},
                {network, std::to_string(d.fail), std::to_string(d.split), d.delta()}});
}

// ---------------------------------------------------------------------------
// Commands

Stage analyze_stage(const std::string& name, const ppn::PPN& net, const ParamAssignment& pa, const Options& opts) {
  Stage s;
  s.name = name;
  for (const auto& c : net.channels) {
    const auto& sp = net.process(c.producer).schedule;
    const auto& sc = net.process(c.consumer).schedule;
    ChannelRow row;
    row.id = c.id;
    row.producer = c.producer;
    row.consumer = c.consumer;
    auto v = patterns::classify(c.dataflow, sp, sc, pa);
    row.pattern = v.pattern;
    row.in_order = v.in_order;
    row.unicity = v.unicity;
    row.pairs = static_cast<std::int64_t>(c.dataflow.instantiate(pa).enumerate_pairs(opts.budget).size());
    row.maxlive = sizing::max_live(net, c, pa, opts.budget);
    row.size = sizing::round_size(row.maxlive);
    if (opts.oracle || opts.dump_trace) {
      auto trace = oracle::build_trace(c.dataflow, sp, sc, pa, opts.budget);
      if (opts.dump_trace) {
        std::filesystem::create_directories(*opts.dump_trace);
        std::ofstream(*opts.dump_trace / (name + "." + c.id + ".trace.json")) << trace.to_json() << "\n";
      }
      if (opts.oracle) {
        const auto ov = oracle::oracle_classify(trace);
        const auto live = oracle::oracle_maxlive(net, c, pa, opts.budget);
        row.oracle_agrees = ov.pattern == v.pattern && live == row.maxlive;
      }
    }
    ++s.summary.n_channels;
    if (row.pattern == PatternClass::Fifo) {
      ++s.summary.n_fifo;
      s.summary.fifo_size += row.size;
    }
    s.summary.total_size += row.size;
    s.channels.push_back(std::move(row));
  }
  return s;
}

namespace {

ParamAssignment resolve(const ppn::PPN& net, const Options& opts) {
  ParamAssignment pa = net.assignment(opts.params);
  net.require_params(pa);
  auto report = ppn::validate_at(net, pa, opts.budget);
  if (!report.ok()) throw ValidationError(report.first_failure());
  return pa;
}

std::optional<bool> agreement(const Report& r, bool enabled) {
  if (!enabled) return std::nullopt;
  bool ok = true;
  for (const Stage* s : {&r.before, r.after ? &*r.after : nullptr}) {
    if (!s) continue;
    for (const auto& c : s->channels) ok = ok && c.oracle_agrees.value_or(true);
  }
  return ok;
}

}  // namespace

Report analyze(const ppn::PPN& net, const tiling::TilingMap* tilings, const Options& opts) {
  Report r;
  r.command = "analyze";
  r.network = net.name;
  r.params = resolve(net, opts);
  r.before = analyze_stage("untiled", net, r.params, opts);
  if (tilings) {
    r.tilings = *tilings;
    r.after = analyze_stage("tiled", tiling::tile_network(net, *tilings), r.params, opts);
  }
  r.oracle_agreement = agreement(r, opts.oracle);
  return r;
}

FifoizeRun run_fifoize(const ppn::PPN& net, const tiling::TilingMap& tilings, const Options& opts) {
  Report r;
  r.command = "fifoize";
  r.network = net.name;
  r.params = resolve(net, opts);
  r.tilings = tilings;
  ppn::PPN tiled = tiling::tile_network(net, tilings);
  r.before = analyze_stage("tiled", tiled, r.params, opts);
  auto [out, log] = splitter::fifoize_tiled(tiled, r.params);
  r.after = analyze_stage("split", out, r.params, opts);

  SizeDelta sizes;
  std::int64_t recovered = 0;
  for (const auto& c : r.before.channels) {
    const auto* entry = log.find(c.id);
    const bool replaced = entry && entry->action == splitter::Action::Replaced;
    if (c.pattern == PatternClass::Fifo && !replaced) ++recovered;
    if (!replaced) continue;
    bool parts_fifo = true;
    sizes.fail += c.size;
    for (const auto& p : entry->parts) {
      if (const auto* row = r.after->find(c.id + p.suffix)) {
        sizes.split += row->size;
        parts_fifo = parts_fifo && row->pattern == PatternClass::Fifo;
      }
    }
    if (parts_fifo) ++recovered;
  }
  r.after->summary.n_fifo_split = recovered;
  r.after->summary.n_original = r.before.summary.n_channels;
  r.sizes = sizes;
  r.log = std::move(log);
  r.oracle_agreement = agreement(r, opts.oracle);
  return {std::move(r), std::move(out)};
}

SizeDelta delta_from_reports(const Report& original, const Report& split) {
  if (original.network != split.network) {
    throw MismatchedReports("reports describe different networks: " + original.network + " vs " + split.network);
  }
  if (original.params != split.params) throw MismatchedReports("reports were computed at different parameters");
  const Stage& orig = original.after ? *original.after : original.before;
  const Stage& next = split.after ? *split.after : split.before;
  SizeDelta d;
  for (const auto& c : orig.channels) {
    if (next.find(c.id)) continue;
    std::int64_t parts = 0;
    std::int64_t size = 0;
    for (const auto& s : next.channels) {
      if (s.id.size() <= c.id.size() || s.id.compare(0, c.id.size(), c.id) != 0) continue;
      const std::string suffix = s.id.substr(c.id.size());
      const bool depth = suffix.size() > 2 && suffix.compare(0, 2, ".d") == 0 &&
                         suffix.find_first_not_of("0123456789", 2) == std::string::npos;
      if (depth || suffix == ".intra") {
        ++parts;
        size += s.size;
      }
    }
    if (parts == 0) throw MismatchedReports("channel " + c.id + " vanished without replacement channels");
    d.fail += c.size;
    d.split += size;
  }
  return d;
}

ParamAssignment parse_params(const std::string& text) {
  auto trim = [](std::string v) {
    const auto b = v.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return v.substr(b, v.find_last_not_of(" \t") - b + 1);
  };
  ParamAssignment pa;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError("expected name=value in --params, got '" + item + "'");
    const std::string name = trim(item.substr(0, eq));
    const std::string value = trim(item.substr(eq + 1));
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParseError("parameter " + name + " needs an integer value, got '" + value + "'");
    }
    if (!pa.emplace(name, v).second) throw ParseError("parameter " + name + " given twice in --params");
  }
  return pa;
}

}  // namespace ppnfifo::cli
