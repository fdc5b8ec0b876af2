#include "ppnfifo/oracle/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"
#include "ppnfifo/errors.hpp"

namespace ppnfifo::oracle {

std::string Trace::to_json() const {
  nlohmann::json j;
  j["writes"] = nlohmann::json::array();
  for (const auto& w : writes) j["writes"].push_back({{"time", w.time}, {"iteration", w.iteration}});
  j["reads"] = nlohmann::json::array();
  for (const auto& r : reads) {
    j["reads"].push_back({{"time", r.time}, {"iteration", r.iteration}, {"source", r.source}});
  }
  return j.dump(1);
}

Trace build_trace(const IntegerRelation& rel, const ppn::Schedule& sp, const ppn::Schedule& sc,
                  const ParamAssignment& pa, std::size_t budget) {
  const auto pairs = rel.instantiate(pa).enumerate_pairs(budget);
  const auto pv = sp.param_values(pa);
  const auto cv = sc.param_values(pa);

  std::map<Point, Point> writes_by_time;  // time -> iteration
  std::map<Point, Point> iteration_time;
  for (const auto& [x, y] : pairs) {
    if (iteration_time.count(x)) continue;
    Point t = sp.at(x, pv);
    auto [it, fresh] = writes_by_time.emplace(t, x);
    if (!fresh) {
      throw ScheduleCollision("producer iterations " + ppn::format_point(it->second) + " and " + ppn::format_point(x) +
                              " share a timestamp");
    }
    iteration_time.emplace(x, std::move(t));
  }
  Trace trace;
  std::map<Point, std::size_t> index;
  for (const auto& [t, x] : writes_by_time) {
    index.emplace(x, trace.writes.size());
    trace.writes.push_back({t, x});
  }
  for (const auto& [x, y] : pairs) trace.reads.push_back({sc.at(y, cv), y, index.at(x)});
  std::stable_sort(trace.reads.begin(), trace.reads.end(), [](const TraceRead& a, const TraceRead& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.iteration < b.iteration;
  });
  for (std::size_t i = 1; i < trace.reads.size(); ++i) {
    if (trace.reads[i].time == trace.reads[i - 1].time) {
      throw ScheduleCollision("two reads share consumer timestamp " + ppn::format_point(trace.reads[i].time));
    }
  }
  return trace;
}

OracleVerdict oracle_classify(const Trace& t) {
  OracleVerdict v;
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < t.reads.size(); ++i) {
    const auto& r = t.reads[i];
    if (!seen.insert(r.source).second) v.unicity = false;
    if (i > 0 && r.source < t.reads[i - 1].source && v.in_order) {
      v.in_order = false;
      const auto& prev = t.reads[i - 1];
      v.witness = "read " + ppn::format_point(r.iteration) + " consumes write " +
                  ppn::format_point(t.writes[r.source].iteration) + " after read " + ppn::format_point(prev.iteration) +
                  " consumed the later write " + ppn::format_point(t.writes[prev.source].iteration);
    }
  }
  v.pattern = patterns::quadrant(v.in_order, v.unicity);
  return v;
}

OracleVerdict oracle_classify(const IntegerRelation& rel, const ppn::Schedule& sp, const ppn::Schedule& sc,
                              const ParamAssignment& pa, std::size_t budget) {
  return oracle_classify(build_trace(rel, sp, sc, pa, budget));
}

namespace {

struct Event {
  Point key;
  int kind;  // 0 read, 1 write: reads first at equal keys
  Point producer_iteration;
};

}  // namespace

std::int64_t oracle_maxlive(const IntegerRelation& rel, const sizing::Endpoints& ends, const ParamAssignment& pa,
                            std::size_t budget) {
  const auto pairs = rel.instantiate(pa).enumerate_pairs(budget);
  const auto pv = ends.producer->param_values(pa);
  const auto cv = ends.consumer->param_values(pa);
  const std::size_t width = std::max(ends.producer->n_rows(), ends.consumer->n_rows());
  auto key = [&](std::int64_t phase, Point t) {
    t.resize(width, 0);
    t.insert(t.begin(), phase);
    return t;
  };

  std::vector<Event> events;
  std::map<Point, std::int64_t> pending;  // reads left per write
  for (const auto& [x, y] : pairs) {
    if (pending[x]++ == 0) events.push_back({key(ends.producer_phase, ends.producer->at(x, pv)), 1, x});
    events.push_back({key(ends.consumer_phase, ends.consumer->at(y, cv)), 0, x});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    if (a.key != b.key) return a.key < b.key;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.producer_iteration < b.producer_iteration;
  });
  for (std::size_t i = 1; i < events.size(); ++i) {
    if (!ends.same_process && events[i].key == events[i - 1].key && events[i].kind != events[i - 1].kind) {
      throw ScheduleCollision("producer and consumer share the global time " + ppn::format_point(events[i].key));
    }
  }

  std::set<Point> live;
  std::int64_t peak = 0;
  for (const auto& e : events) {
    if (e.kind == 1) {
      live.insert(e.producer_iteration);
      peak = std::max(peak, static_cast<std::int64_t>(live.size()));
    } else {
      if (!live.count(e.producer_iteration)) {
        throw CausalityError("value of " + ppn::format_point(e.producer_iteration) + " read before it is written");
      }
      if (--pending[e.producer_iteration] == 0) live.erase(e.producer_iteration);
    }
  }
  return peak;
}

std::int64_t oracle_maxlive(const ppn::PPN& net, const ppn::Channel& c, const ParamAssignment& pa, std::size_t budget) {
  return oracle_maxlive(c.dataflow, sizing::endpoints(net, c), pa, budget);
}

}  // namespace ppnfifo::oracle
