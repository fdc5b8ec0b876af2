#include "ppnfifo/sizing/sizing.hpp"

#include <algorithm>
#include <set>

#include "ppnfifo/errors.hpp"

namespace ppnfifo::sizing {

Point global_key(std::int64_t phase, const Point& timestamp, std::size_t width) {
  Point k;
  k.reserve(width + 1);
  k.push_back(phase);
  k.insert(k.end(), timestamp.begin(), timestamp.end());
  k.resize(width + 1, 0);
  return k;
}

Endpoints endpoints(const ppn::PPN& net, const ppn::Channel& c) {
  const auto& p = net.process(c.producer);
  const auto& q = net.process(c.consumer);
  return {&p.schedule, &q.schedule, p.phase, q.phase, c.producer == c.consumer};
}

std::int64_t max_live(const IntegerRelation& rel, const Endpoints& ends, const ParamAssignment& pa,
                      std::size_t budget) {
  const auto pairs = rel.instantiate(pa).enumerate_pairs(budget);
  if (pairs.empty()) return 0;
  const auto pv = ends.producer->param_values(pa);
  const auto cv = ends.consumer->param_values(pa);
  const std::size_t width = std::max(ends.producer->n_rows(), ends.consumer->n_rows());

  // Pairs are sorted by producer iteration, so each write's reads are contiguous.
  std::vector<Point> writes;
  std::vector<Point> last_reads;
  std::set<Point> read_keys;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [x, y] = pairs[i];
    Point w = global_key(ends.producer_phase, ends.producer->at(x, pv), width);
    Point r = global_key(ends.consumer_phase, ends.consumer->at(y, cv), width);
    if (r == w && !ends.same_process) {
      throw ScheduleCollision("producer and consumer share the global time " + ppn::format_point(w));
    }
    if (r <= w) {
      throw CausalityError("read at " + ppn::format_point(y) + " is not after its write at " + ppn::format_point(x));
    }
    read_keys.insert(r);
    if (i == 0 || pairs[i - 1].first != x) {
      writes.push_back(std::move(w));
      last_reads.push_back(std::move(r));
    } else if (last_reads.back() < r) {
      last_reads.back() = std::move(r);
    }
  }
  if (!ends.same_process) {
    for (const auto& w : writes) {
      if (read_keys.count(w)) {
        throw ScheduleCollision("producer and consumer share the global time " + ppn::format_point(w));
      }
    }
  }

  std::sort(writes.begin(), writes.end());
  std::sort(last_reads.begin(), last_reads.end());
  // After the write at writes[i]: everything written so far minus everything
  // whose last read happened at or before that time.
  std::int64_t best = 0;
  std::size_t retired = 0;
  for (std::size_t i = 0; i < writes.size(); ++i) {
    while (retired < last_reads.size() && last_reads[retired] <= writes[i]) ++retired;
    best = std::max(best, static_cast<std::int64_t>(i + 1 - retired));
  }
  return best;
}

std::int64_t max_live(const ppn::PPN& net, const ppn::Channel& c, const ParamAssignment& pa, std::size_t budget) {
  return max_live(c.dataflow, endpoints(net, c), pa, budget);
}

std::int64_t round_size(std::int64_t n) {
  if (n <= 0) return 0;
  std::int64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

SizeReport size_report(const ppn::PPN& net, const ParamAssignment& pa,
                       const std::map<std::string, PatternClass>& classes, std::size_t budget) {
  SizeReport r;
  for (const auto& c : net.channels) {
    auto it = classes.find(c.id);
    if (it == classes.end()) throw ValidationError("channel " + c.id + " has no classification");
    ChannelSize s{c.id, max_live(net, c, pa, budget), 0, it->second};
    s.rounded = round_size(s.raw_maxlive);
    if (s.pattern == PatternClass::Fifo) r.fifo_size += s.rounded;
    r.total_size += s.rounded;
    r.channels.push_back(std::move(s));
  }
  std::sort(r.channels.begin(), r.channels.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return r;
}

std::string percent_string(std::int64_t part, std::int64_t whole) {
  if (whole == 0) return "0%";
  return std::to_string(100 * part / whole) + "%";
}

std::string delta_string(std::int64_t fail, std::int64_t split) {
  if (fail == 0) return "";
  const std::int64_t num = 100 * (split - fail);
  const std::int64_t mag = (2 * std::abs(num) + std::abs(fail)) / (2 * std::abs(fail));
  const bool negative = (num < 0) != (fail < 0);
  return std::to_string(negative && mag != 0 ? -mag : mag) + "%";
}

}  // namespace ppnfifo::sizing
