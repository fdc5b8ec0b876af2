#include "ppnfifo/ppn/ppn.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ppnfifo/errors.hpp"
#include "ppnfifo/presburger/text.hpp"

namespace ppnfifo::ppn {

using nlohmann::json;
using presburger::Integer;
using presburger::to_int64;

std::vector<std::int64_t> Schedule::param_values(const ParamAssignment& pa) const {
  std::vector<std::int64_t> out;
  for (const auto& p : input_space.params()) {
    auto it = pa.find(p);
    if (it == pa.end()) throw MissingParameter("no value given for parameter " + p);
    out.push_back(it->second);
  }
  return out;
}

Point Schedule::at(const Point& x, const std::vector<std::int64_t>& param_values) const {
  std::vector<std::int64_t> columns(x);
  columns.insert(columns.end(), param_values.begin(), param_values.end());
  Point t;
  t.reserve(rows.size());
  for (const auto& r : rows) t.push_back(to_int64(r.evaluate(std::span<const std::int64_t>(columns))));
  return t;
}

std::vector<std::string> PPN::param_names() const {
  std::vector<std::string> out;
  for (const auto& p : params) out.push_back(p.name);
  return out;
}

const Process* PPN::find_process(std::string_view name) const {
  for (const auto& p : processes) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

const Process& PPN::process(std::string_view name) const {
  const Process* p = find_process(name);
  if (!p) throw ValidationError("unknown process '" + std::string(name) + "'");
  return *p;
}

const Channel* PPN::find_channel(std::string_view id) const {
  for (const auto& c : channels) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

ParamAssignment PPN::assignment(const ParamAssignment& overrides) const {
  ParamAssignment pa;
  for (const auto& p : params) {
    if (p.default_value) pa[p.name] = *p.default_value;
  }
  for (const auto& [name, value] : overrides) {
    auto it = std::find_if(params.begin(), params.end(), [&](const ParamDecl& d) { return d.name == name; });
    if (it == params.end()) throw ValidationError("unknown parameter '" + name + "'");
    if ((it->min && value < *it->min) || (it->max && value > *it->max)) {
      throw ValidationError("parameter " + name + "=" + std::to_string(value) + " is outside its declared bounds");
    }
    pa[name] = value;
  }
  return pa;
}

void PPN::require_params(const ParamAssignment& pa) const {
  for (const auto& p : params) {
    if (!pa.count(p.name)) throw MissingParameter("no value given for parameter " + p.name);
  }
}

Schedule make_schedule(std::string name, const std::vector<std::string>& dims, const std::vector<std::string>& params,
                       const std::vector<std::string>& rows, bool sequential) {
  Schedule s{std::move(name), Space(dims, params), {}, sequential};
  for (const auto& r : rows) s.rows.push_back(presburger::parse_affine(r, s.input_space));
  return s;
}

// ---------------------------------------------------------------------------
// JSON

namespace {

template <typename T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + ": bad value for '" + key + "': " + e.what());
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return field<T>(j, key, where);
}

Process parse_process(const json& j, const std::vector<std::string>& params) {
  if (!j.is_object()) throw ParseError("process entries must be objects");
  Process p;
  p.name = field<std::string>(j, "name", "process");
  const std::string where = "process " + p.name;
  IntegerSet domain = presburger::parse_set(field<std::string>(j, "domain", where), params);
  if (domain.space().n_existentials() != 0) throw ValidationError(where + ": domains may not use existentials");
  if (auto dims = optional_field<std::vector<std::string>>(j, "dims", where)) {
    if (dims->size() != domain.space().n_dims()) {
      throw ValidationError(where + ": domain arity does not match the declared dims");
    }
    domain = domain.renamed(*dims);
  }
  p.domain = domain.align_params(params);

  std::vector<std::string> rows;
  bool sequential = true;
  const auto& sj = j.contains("schedule") ? j.at("schedule") : json();
  if (sj.is_array()) {
    rows = field<std::vector<std::string>>(j, "schedule", where);
  } else if (sj.is_object()) {
    rows = field<std::vector<std::string>>(sj, "rows", where + " schedule");
    sequential = optional_field<bool>(sj, "sequential", where).value_or(true);
  } else {
    throw ParseError(where + ": missing or malformed 'schedule'");
  }
  if (rows.empty()) throw ValidationError(where + ": schedule has no rows");
  p.schedule = make_schedule("theta_" + p.name, p.dims(), params, rows, sequential);
  p.instance_label = optional_field<std::string>(j, "instance_label", where);
  p.tile_depth = optional_field<std::size_t>(j, "tile_depth", where).value_or(0);
  p.phase = optional_field<std::int64_t>(j, "phase", where).value_or(0);
  if (p.tile_depth > p.dims().size()) throw ValidationError(where + ": tile_depth exceeds the dimension count");
  return p;
}

Channel parse_channel(const json& j, const PPN& ppn, const std::vector<std::string>& params) {
  if (!j.is_object()) throw ParseError("channel entries must be objects");
  Channel c;
  c.id = field<std::string>(j, "id", "channel");
  const std::string where = "channel " + c.id;
  c.producer = field<std::string>(j, "producer", where);
  c.consumer = field<std::string>(j, "consumer", where);
  const Process* prod = ppn.find_process(c.producer);
  const Process* cons = ppn.find_process(c.consumer);
  if (!prod) throw ValidationError(where + ": unknown producer process '" + c.producer + "'");
  if (!cons) throw ValidationError(where + ": unknown consumer process '" + c.consumer + "'");
  IntegerRelation rel = presburger::parse_relation(field<std::string>(j, "relation", where), params);
  if (rel.n_in() != prod->dims().size() || rel.n_out() != cons->dims().size()) {
    throw ValidationError(where + ": relation arity does not match its endpoints");
  }
  rel = rel.renamed(prod->dims(), cons->dims()).align_params(params);
  c.dataflow = rel.intersect_domain(prod->domain, cons->domain);
  return c;
}

}  // namespace

PPN parse_ppn(std::string_view json_text, const std::optional<ParamAssignment>& pa) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("model must be a JSON object");

  PPN ppn;
  ppn.name = optional_field<std::string>(j, "name", "model").value_or("");
  if (j.contains("params")) {
    for (const auto& pj : j.at("params")) {
      ParamDecl d;
      if (pj.is_string()) {
        d.name = pj.get<std::string>();
      } else {
        d.name = field<std::string>(pj, "name", "parameter");
        d.default_value = optional_field<std::int64_t>(pj, "default", "parameter " + d.name);
        d.min = optional_field<std::int64_t>(pj, "min", "parameter " + d.name);
        d.max = optional_field<std::int64_t>(pj, "max", "parameter " + d.name);
      }
      for (const auto& other : ppn.params) {
        if (other.name == d.name) throw ValidationError("parameter " + d.name + " declared twice");
      }
      ppn.params.push_back(std::move(d));
    }
  }
  const auto params = ppn.param_names();
  if (j.contains("test_params")) {
    for (const auto& tj : j.at("test_params")) {
      auto raw = tj.get<std::map<std::string, std::int64_t>>();
      ParamAssignment tp(raw.begin(), raw.end());
      ppn.require_params(tp);
      ppn.test_params.push_back(ppn.assignment(tp));
    }
  }

  std::set<std::string> seen;
  for (const auto& pj : field<json>(j, "processes", "model")) {
    Process p = parse_process(pj, params);
    if (!seen.insert(p.name).second) throw ValidationError("process " + p.name + " declared twice");
    ppn.processes.push_back(std::move(p));
  }
  seen.clear();
  if (j.contains("channels")) {
    for (const auto& cj : j.at("channels")) {
      Channel c = parse_channel(cj, ppn, params);
      if (!seen.insert(c.id).second) throw ValidationError("channel id " + c.id + " is not unique");
      ppn.channels.push_back(std::move(c));
    }
  }

  if (pa) {
    auto report = validate_at(ppn, ppn.assignment(*pa));
    if (!report.ok()) throw ValidationError(report.first_failure());
  }
  return ppn;
}

PPN load_ppn(const std::filesystem::path& path, const std::optional<ParamAssignment>& pa) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_ppn(buf.str(), pa);
}

std::string dump_ppn(const PPN& ppn) {
  json j;
  j["name"] = ppn.name;
  j["params"] = json::array();
  for (const auto& p : ppn.params) {
    json pj{{"name", p.name}};
    if (p.default_value) pj["default"] = *p.default_value;
    if (p.min) pj["min"] = *p.min;
    if (p.max) pj["max"] = *p.max;
    j["params"].push_back(pj);
  }
  j["test_params"] = json::array();
  for (const auto& tp : ppn.test_params) j["test_params"].push_back(tp);
  j["processes"] = json::array();
  for (const auto& p : ppn.processes) {
    json pj{{"name", p.name}, {"dims", p.dims()}, {"domain", p.domain.to_string()}};
    std::vector<std::string> rows;
    for (const auto& r : p.schedule.rows) rows.push_back(presburger::format_affine(r, p.schedule.input_space));
    if (p.schedule.sequential) {
      pj["schedule"] = rows;
    } else {
      pj["schedule"] = {{"rows", rows}, {"sequential", false}};
    }
    if (p.instance_label) pj["instance_label"] = *p.instance_label;
    if (p.tile_depth) pj["tile_depth"] = p.tile_depth;
    pj["phase"] = p.phase;
    j["processes"].push_back(pj);
  }
  j["channels"] = json::array();
  for (const auto& c : ppn.channels) {
    j["channels"].push_back(
        {{"id", c.id}, {"producer", c.producer}, {"consumer", c.consumer}, {"relation", c.dataflow.to_string()}});
  }
  return j.dump(2) + "\n";
}

void save_ppn(const PPN& ppn, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << dump_ppn(ppn);
}

// ---------------------------------------------------------------------------
// Validation

std::string format_point(const Point& p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + std::to_string(p[i]);
  return out + ")";
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.ok; });
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.ok) return c.name + " violated: " + c.detail;
  }
  return "";
}

ValidationReport validate_at(const PPN& ppn, const ParamAssignment& pa, std::size_t budget) {
  ppn.require_params(pa);
  ValidationReport report;
  std::map<std::string, std::vector<Point>> points;
  for (const auto& p : ppn.processes) {
    auto& pts = points[p.name] = p.domain.instantiate(pa).enumerate_points(budget);
    if (!p.schedule.sequential) continue;
    ValidationCheck check{"schedule injectivity of " + p.name, true, ""};
    const auto pv = p.schedule.param_values(pa);
    std::map<Point, Point> by_time;
    for (const auto& x : pts) {
      Point t = p.schedule.at(x, pv);
      auto [it, inserted] = by_time.emplace(t, x);
      if (!inserted) {
        check.ok = false;
        check.detail = "iterations " + format_point(it->second) + " and " + format_point(x) +
                       " share timestamp " + format_point(t);
        break;
      }
    }
    report.checks.push_back(std::move(check));
  }

  std::map<std::string, std::vector<presburger::PointPair>> pairs;
  for (const auto& c : ppn.channels) {
    auto& ps = pairs[c.id] = c.dataflow.instantiate(pa).enumerate_pairs(budget);
    ValidationCheck check{"containment of channel " + c.id, true, ""};
    const auto& src = points.at(c.producer);
    const auto& dst = points.at(c.consumer);
    for (const auto& [x, y] : ps) {
      const bool in_src = std::binary_search(src.begin(), src.end(), x);
      if (!in_src || !std::binary_search(dst.begin(), dst.end(), y)) {
        check.ok = false;
        check.detail = "pair " + format_point(x) + " -> " + format_point(y) + " leaves the " +
                       (in_src ? "consumer" : "producer") + " domain";
        break;
      }
    }
    report.checks.push_back(std::move(check));
  }

  for (std::size_t a = 0; a < ppn.channels.size(); ++a) {
    for (std::size_t b = a + 1; b < ppn.channels.size(); ++b) {
      const auto& ca = ppn.channels[a];
      const auto& cb = ppn.channels[b];
      if (ca.producer != cb.producer || ca.consumer != cb.consumer) continue;
      ValidationCheck check{"disjointness of channels " + ca.id + " and " + cb.id, true, ""};
      const auto& pa_ = pairs.at(ca.id);
      const auto& pb = pairs.at(cb.id);
      std::vector<presburger::PointPair> shared;
      std::set_intersection(pa_.begin(), pa_.end(), pb.begin(), pb.end(), std::back_inserter(shared));
      if (!shared.empty()) {
        check.ok = false;
        check.detail = "both carry " + format_point(shared.front().first) + " -> " + format_point(shared.front().second);
      }
      report.checks.push_back(std::move(check));
    }
  }
  return report;
}

}  // namespace ppnfifo::ppn
