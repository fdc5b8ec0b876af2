#include "doctest.h"
#include "ppnfifo/errors.hpp"
#include "ppnfifo/oracle/oracle.hpp"
#include "ppnfifo/presburger/text.hpp"
#include "ppnfifo/splitter/splitter.hpp"
#include "ppnfifo/tiling/tiling.hpp"
#include "support.hpp"

using namespace ppnfifo;
using patterns::PatternClass;

TEST_CASE("broadcast read writer-major") {
  auto sp = ppn::make_schedule("p", {"i"}, {}, {"i"});
  auto sc = ppn::make_schedule("c", {"i", "j"}, {}, {"i", "j"});
  auto r = presburger::parse_relation("{ [i] -> [i, j] : 0 <= i <= 4 and 0 <= j <= 2 }");
  auto t = oracle::build_trace(r, sp, sc, {});
  CHECK(t.writes.size() == 5);
  CHECK(t.reads.size() == 15);
  for (std::size_t k = 1; k < t.reads.size(); ++k) CHECK(t.reads[k - 1].time < t.reads[k].time);
  auto v = oracle::oracle_classify(t);
  CHECK(v.pattern == PatternClass::InOrderWithMultiplicity);
  CHECK(v.witness.empty());
}

TEST_CASE("dep5 tiled 2x2 has a reversal") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto pa = net.assignment();
  const auto& c5 = *net.find_channel("c5");
  auto s = net.process("compute").schedule;
  CHECK(oracle::oracle_classify(c5.dataflow, s, s, pa).pattern == PatternClass::Fifo);
  auto tiled = tiling::tile_network(net, tiling::load_tilings(brute::model("jacobi1d.tile2x2.json")));
  auto ts = tiled.process("compute").schedule;
  auto v = oracle::oracle_classify(tiled.find_channel("c5")->dataflow, ts, ts, pa);
  CHECK_FALSE(v.in_order);
  CHECK(v.unicity);
  CHECK_FALSE(v.witness.empty());
}

TEST_CASE("oracle maxlive on small cases") {
  auto s = ppn::make_schedule("s", {"i"}, {}, {"i"});
  sizing::Endpoints e{&s, &s, 0, 0, true};
  CHECK(oracle::oracle_maxlive(presburger::parse_relation("{ [i] -> [i + 1] : i < 0 and i > 0 }"), e, {}) == 0);
  CHECK(oracle::oracle_maxlive(presburger::parse_relation("{ [0] -> [1] }"), e, {}) == 1);
}

TEST_CASE("depth-1 part of dep5 holds N values") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  ppn::ParamAssignment pa{{"T", 8}, {"N", 16}};
  auto [out, log] = splitter::fifoize(net, tiling::load_tilings(brute::model("jacobi1d.tile2x2.json")), pa);
  CHECK(oracle::oracle_maxlive(out, *out.find_channel("c5.d1"), pa) == 16);
}

TEST_CASE("equal consumer timestamps are refused") {
  auto sp = ppn::make_schedule("p", {"i"}, {}, {"i"});
  auto sc = ppn::make_schedule("c", {"i", "j"}, {}, {"i"});
  auto r = presburger::parse_relation("{ [i] -> [i, j] : 0 <= i <= 2 and 0 <= j <= 1 }");
  CHECK_THROWS_AS(oracle::build_trace(r, sp, sc, {}), ScheduleCollision);
}

TEST_CASE("budget is enforced") {
  auto s = ppn::make_schedule("s", {"i"}, {}, {"i"});
  auto r = presburger::parse_relation("{ [i - 1] -> [i] : 1 <= i <= 100 }");
  CHECK_THROWS_AS(oracle::build_trace(r, s, s, {}, 10), BudgetError);
}

TEST_CASE("oracle agrees with the symbolic path across the corpus") {
  struct Case {
    const char* model;
    const char* tiling;
  };
  for (auto [m, t] : {Case{"jacobi1d.ppn.json", "jacobi1d.tile2x2.json"}, Case{"gemm.ppn.json", "gemm.tile.json"},
                      Case{"seidel1d.ppn.json", "seidel1d.tile.json"}, Case{"longdep.ppn.json", "longdep.tile.json"}}) {
    auto net = ppn::load_ppn(brute::model(m));
    auto tiled = tiling::tile_network(net, tiling::load_tilings(brute::model(t)));
    for (const auto& pa : net.test_params) {
      auto [split, log] = splitter::fifoize_tiled(tiled, pa);
      for (const ppn::PPN* n : {&net, &tiled, &split}) {
        for (const auto& c : n->channels) {
          const auto& sp = n->process(c.producer).schedule;
          const auto& sc = n->process(c.consumer).schedule;
          auto sym = patterns::classify(*n, c, pa);
          auto brute_v = oracle::oracle_classify(c.dataflow, sp, sc, pa);
          CHECK_MESSAGE(sym.pattern == brute_v.pattern, m << " " << c.id);
          CHECK_MESSAGE(sizing::max_live(*n, c, pa) == oracle::oracle_maxlive(*n, c, pa), m << " " << c.id);
        }
      }
    }
  }
}

TEST_CASE("traces are deterministic") {
  auto net = ppn::load_ppn(brute::model("gemm.ppn.json"));
  auto pa = net.assignment();
  const auto& c = *net.find_channel("b");
  auto sp = net.process(c.producer).schedule;
  auto sc = net.process(c.consumer).schedule;
  CHECK(oracle::build_trace(c.dataflow, sp, sc, pa).to_json() == oracle::build_trace(c.dataflow, sp, sc, pa).to_json());
}
