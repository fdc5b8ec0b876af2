#include <random>
#include <set>

#include "doctest.h"
#include "ppnfifo/errors.hpp"
#include "ppnfifo/splitter/splitter.hpp"
#include "ppnfifo/tiling/tiling.hpp"
#include "support.hpp"

using namespace ppnfifo;
using patterns::PatternClass;
using splitter::Action;

namespace {

using PairSet = std::multiset<brute::Pair>;

PairSet pairs_of(const presburger::IntegerRelation& r, const ppn::ParamAssignment& pa) {
  auto v = r.instantiate(pa).enumerate_pairs();
  return {v.begin(), v.end()};
}

// All pairs of the channels between two processes.
PairSet between(const ppn::PPN& net, const std::string& p, const std::string& c, const ppn::ParamAssignment& pa) {
  PairSet out;
  for (const auto& ch : net.channels) {
    if (ch.producer == p && ch.consumer == c) {
      auto s = pairs_of(ch.dataflow, pa);
      out.insert(s.begin(), s.end());
    }
  }
  return out;
}

std::size_t count_fifo(const ppn::PPN& net, const ppn::ParamAssignment& pa) {
  std::size_t n = 0;
  for (const auto& c : net.channels) n += patterns::classify(net, c, pa).pattern == PatternClass::Fifo;
  return n;
}

}  // namespace

TEST_CASE("part suffixes") {
  CHECK(splitter::part_suffix(0, 2) == ".d1");
  CHECK(splitter::part_suffix(1, 2) == ".d2");
  CHECK(splitter::part_suffix(2, 2) == ".intra");
  CHECK(splitter::part_suffix(0, 1) == ".d1");
}

TEST_CASE("schedule shape is checked") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  const auto& c5 = *net.find_channel("c5");
  auto s = net.process("compute").schedule;
  CHECK_THROWS_AS(splitter::check_shape(c5.dataflow, s, s, 3), BadScheduleShape);
  auto skew = ppn::make_schedule("skew", {"t", "i"}, {"T", "N"}, {"t + i", "t"});
  CHECK_THROWS_AS(splitter::check_shape(c5.dataflow, skew, skew, 1), BadScheduleShape);
  CHECK_THROWS_AS(splitter::check_shape(c5.dataflow, s, skew, 1), BadScheduleShape);
  auto tiled = tiling::tile_network(net, tiling::load_tilings(brute::model("jacobi1d.tile2x2.json")));
  auto ts = tiled.process("compute").schedule;
  CHECK_NOTHROW(splitter::check_shape(tiled.find_channel("c5")->dataflow, ts, ts, 2));
  CHECK_THROWS_AS(splitter::check_shape(tiled.find_channel("c5")->dataflow, ts, ts, 5), BadScheduleShape);
}

TEST_CASE("jacobi1d parts match enumeration") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  std::map<std::string, brute::Pt> offsets{{"c4", {1, 1}}, {"c5", {1, 0}}, {"c6", {1, -1}}};
  // Frozen from the brute force at T=8: part sizes (d1, d2, intra).
  struct Row {
    std::int64_t n, b;
    std::string id;
    std::vector<std::size_t> sizes;
  };
  std::vector<Row> rows{
      {8, 2, "c4", {28, 21, 0}},   {8, 2, "c5", {32, 12, 12}},  {8, 2, "c6", {28, 0, 21}},
      {8, 4, "c4", {14, 18, 17}},  {8, 4, "c5", {16, 10, 30}},  {8, 4, "c6", {14, 0, 35}},
      {16, 2, "c4", {60, 45, 0}},  {16, 2, "c5", {64, 24, 24}}, {16, 2, "c6", {60, 0, 45}},
      {16, 4, "c4", {30, 38, 37}}, {16, 4, "c5", {32, 20, 60}}, {16, 4, "c6", {30, 0, 75}},
  };
  for (const auto& row : rows) {
    tiling::Tiling t{{{1, 0}, {1, 1}}, {row.b, row.b}};
    brute::Tile bt{t.normals, t.sizes};
    auto tiled = tiling::tile_network(net, {{"compute", t}});
    auto ts = tiled.process("compute").schedule;
    ppn::ParamAssignment pa{{"T", 8}, {"N", row.n}};
    auto res = splitter::split(tiled.find_channel(row.id)->dataflow, ts, ts, 2, pa);
    REQUIRE(res.parts.size() == 3);
    CHECK(res.residual_empty);
    auto expect = brute::split(brute::jacobi_dep(8, row.n, offsets[row.id]), bt);
    for (std::size_t k = 0; k < 3; ++k) {
      PairSet e;
      for (const auto& [x, y] : expect[k]) e.insert({brute::tiled_point(x, bt), brute::tiled_point(y, bt)});
      CHECK(pairs_of(res.parts[k], pa) == e);
      CHECK(e.size() == row.sizes[k]);
      CHECK(res.nonempty_mask[k] == (row.sizes[k] > 0));
    }
  }
}

TEST_CASE("property: split parts partition the relation") {
  std::mt19937_64 rng(2024);
  for (int n = 0; n < 40; ++n) {
    auto c = brute::random_uniform_case(rng);
    auto net = ppn::parse_ppn(c.model_json());
    auto tiled = tiling::tile_network(net, {{"s", {c.tile.normals, c.tile.sizes}}});
    auto s = tiled.process("s").schedule;
    const auto& rel = tiled.channels.front().dataflow;
    auto res = splitter::split(rel, s, s, 2, ppn::ParamAssignment{});
    CHECK_MESSAGE(res.residual_empty, c.describe());
    PairSet all = pairs_of(rel, {}), joined;
    std::set<brute::Pair> distinct;
    for (const auto& part : res.parts) {
      for (const auto& p : pairs_of(part, {})) {
        joined.insert(p);
        distinct.insert(p);
      }
    }
    CHECK_MESSAGE(joined == all, c.describe());
    CHECK_MESSAGE(distinct.size() == joined.size(), c.describe());
  }
}

TEST_CASE("residual holds backward pairs of an illegal tiling") {
  // The normal (0, 1) sends (t - 1, i + 1) -> (t, i) to an earlier tile.
  auto text = std::string(R"({"name": "m", "params": [], "processes": [
    {"name": "s", "dims": ["t", "i"], "domain": "{ [t, i] : 0 <= t < 6 and 0 <= i < 6 }", "schedule": ["t", "i"]}],
    "channels": [{"id": "c", "producer": "s", "consumer": "s", "relation": "{ [t - 1, i + 1] -> [t, i] : true }"}]})");
  auto m = ppn::parse_ppn(text);
  auto tiled = tiling::tile_network(m, {{"s", {{{1, 0}, {0, 1}}, {2, 2}}}});
  auto s = tiled.process("s").schedule;
  auto res = splitter::split(tiled.channels.front().dataflow, s, s, 2, ppn::ParamAssignment{});
  CHECK_FALSE(res.residual_empty);
  auto [out, log] = splitter::fifoize_tiled(tiled, {});
  CHECK(log.find("c")->action == Action::Kept);
  CHECK(out.channels.size() == 1);
}

TEST_CASE("fifoize jacobi1d 2x2") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto tm = tiling::load_tilings(brute::model("jacobi1d.tile2x2.json"));
  auto pa = net.assignment();
  auto [out, log] = splitter::fifoize(net, tm, pa);
  CHECK(log.find("c1")->action == Action::Skipped);
  CHECK(log.find("c7")->action == Action::Skipped);
  for (const char* id : {"c4", "c5", "c6"}) CHECK(log.find(id)->action == Action::Replaced);
  std::vector<std::string> ids;
  for (const auto& c : out.channels) ids.push_back(c.id);
  CHECK(ids == std::vector<std::string>{"c1", "c2", "c3", "c4.d1", "c4.d2", "c5.d1", "c5.d2", "c5.intra", "c6.d1",
                                        "c6.intra", "c7"});
  for (const auto& c : out.channels) CHECK(patterns::classify(out, c, pa).pattern == PatternClass::Fifo);
  CHECK(log.find("c5")->parts.size() == 3);
  CHECK(log.find("c5")->parts[1].size == 12);
  CHECK_THROWS_AS(splitter::fifoize(net, tm, {}), MissingParameter);
}

TEST_CASE("long dependence is kept") {
  auto net = ppn::load_ppn(brute::model("longdep.ppn.json"));
  auto tm = tiling::load_tilings(brute::model("longdep.tile.json"));
  for (const auto& pa : net.test_params) {
    auto [out, log] = splitter::fifoize(net, tm, pa);
    const auto* l = log.find("long");
    REQUIRE(l != nullptr);
    CHECK(l->action == Action::Kept);
    bool some_bad = false;
    for (const auto& p : l->parts) some_bad = some_bad || (p.size > 0 && p.pattern != PatternClass::Fifo);
    CHECK(some_bad);
    CHECK(out.find_channel("long") != nullptr);
    CHECK(log.find("vert")->action == Action::Replaced);
  }
}

TEST_CASE("properties of fifoize over the corpus") {
  struct Case {
    const char* model;
    const char* tiling;
  };
  for (auto [m, t] : {Case{"jacobi1d.ppn.json", "jacobi1d.tile2x2.json"}, Case{"jacobi1d.ppn.json", "jacobi1d.tile4x4.json"},
                      Case{"gemm.ppn.json", "gemm.tile.json"}, Case{"seidel1d.ppn.json", "seidel1d.tile.json"},
                      Case{"longdep.ppn.json", "longdep.tile.json"}}) {
    auto net = ppn::load_ppn(brute::model(m));
    auto tm = tiling::load_tilings(brute::model(t));
    auto tiled = tiling::tile_network(net, tm);
    for (const auto& pa : net.test_params) {
      auto [out, log] = splitter::fifoize_tiled(tiled, pa);
      // semantics: the pairs between each process pair are unchanged
      for (const auto& p : net.processes) {
        for (const auto& q : net.processes) {
          CHECK_MESSAGE(between(out, p.name, q.name, pa) == between(tiled, p.name, q.name, pa), m);
        }
      }
      CHECK_MESSAGE(count_fifo(out, pa) >= count_fifo(tiled, pa), m);
      // idempotence: a second pass replaces nothing
      auto [again, log2] = splitter::fifoize_tiled(out, pa);
      CHECK(again == out);
      for (const auto& e : log2.channels) CHECK_MESSAGE(e.action != Action::Replaced, m << " " << e.id);
      CHECK(splitter::FifoizeLog::from_json(log.to_json()) == log);
    }
  }
}
