#include <cstdlib>
#include <random>

#include "doctest.h"
#include "ppnfifo/errors.hpp"
#include "ppnfifo/patterns/patterns.hpp"
#include "ppnfifo/presburger/text.hpp"
#include "ppnfifo/tiling/tiling.hpp"
#include "support.hpp"

using namespace ppnfifo;
using patterns::PatternClass;

namespace {

ppn::Schedule sched(const std::vector<std::string>& dims, const std::vector<std::string>& rows,
                    const std::vector<std::string>& params = {}) {
  return ppn::make_schedule("s", dims, params, rows);
}

}  // namespace

TEST_CASE("quadrants and names") {
  CHECK(patterns::quadrant(true, true) == PatternClass::Fifo);
  CHECK(patterns::quadrant(true, false) == PatternClass::InOrderWithMultiplicity);
  CHECK(patterns::quadrant(false, true) == PatternClass::OutOfOrderNoMultiplicity);
  CHECK(patterns::quadrant(false, false) == PatternClass::OutOfOrderWithMultiplicity);
  for (auto c : {PatternClass::Fifo, PatternClass::InOrderWithMultiplicity, PatternClass::OutOfOrderNoMultiplicity,
                 PatternClass::OutOfOrderWithMultiplicity}) {
    CHECK(patterns::pattern_from_string(patterns::to_string(c)) == c);
  }
  CHECK_THROWS_AS(patterns::pattern_from_string("Lifo"), ParseError);
}

TEST_CASE("small relations by hand") {
  auto s1 = sched({"i"}, {"i"});
  SUBCASE("shift is a FIFO") {
    auto r = presburger::parse_relation("{ [i - 1] -> [i] : 1 <= i <= 9 }");
    auto v = patterns::classify(r, s1, s1);
    CHECK(v.pattern == PatternClass::Fifo);
  }
  SUBCASE("reversal is out of order") {
    auto r = presburger::parse_relation("{ [9 - i] -> [i] : 0 <= i <= 9 }");
    auto v = patterns::classify(r, s1, s1);
    CHECK_FALSE(v.in_order);
    CHECK(v.unicity);
  }
  SUBCASE("broadcast in writer-major order") {
    auto r = presburger::parse_relation("{ [i] -> [i, j] : 0 <= i <= 4 and 0 <= j <= 2 }");
    auto v = patterns::classify(r, s1, sched({"i", "j"}, {"i", "j"}));
    CHECK(v.pattern == PatternClass::InOrderWithMultiplicity);
  }
  SUBCASE("broadcast read column-major") {
    auto r = presburger::parse_relation("{ [i] -> [i, j] : 0 <= i <= 4 and 0 <= j <= 2 }");
    auto v = patterns::classify(r, s1, sched({"i", "j"}, {"j", "i"}));
    CHECK(v.pattern == PatternClass::OutOfOrderWithMultiplicity);
  }
  SUBCASE("empty relation is a FIFO") {
    auto r = presburger::parse_relation("{ [i] -> [i] : i > 3 and i < 2 }");
    CHECK(patterns::classify(r, s1, s1).pattern == PatternClass::Fifo);
  }
}

TEST_CASE("parameters are required unless given") {
  auto s1 = sched({"i"}, {"i"});
  auto r = presburger::parse_relation("{ [N] -> [i] -> [N - i] : 0 <= i < N }");
  CHECK_THROWS_AS(patterns::in_order(r, s1, s1), MissingParameter);
  CHECK_THROWS_AS(patterns::unicity(r), MissingParameter);
  CHECK_FALSE(patterns::in_order(r, s1, s1, ppn::ParamAssignment{{"N", 5}}));
  CHECK(patterns::in_order(r, s1, s1, ppn::ParamAssignment{{"N", 1}}));
  CHECK(patterns::unicity(r, ppn::ParamAssignment{{"N", 5}}));
}

TEST_CASE("lexicographic comparison sets") {
  auto s = sched({"a", "b"}, {"a", "b"});
  auto r = presburger::parse_relation("{ [x, y] -> [u, v] : 0 <= x <= 2 and 0 <= y <= 2 and 0 <= u <= 2 and 0 <= v <= 2 }");
  using M = patterns::LexMode;
  auto count = [&](M m, std::size_t k) {
    return r.wrapped().intersect(patterns::lex_compare_set(r, s, s, m, k)).enumerate_points().size();
  };
  // 81 pairs of points in a 3x3 box: 9 equal, 36 each way.
  CHECK(count(M::Equal, 0) == 9);
  CHECK(count(M::StrictlyPrecedes, 0) == 36);
  CHECK(count(M::PrecedesAtDepth, 1) == 27);
  CHECK(count(M::PrecedesAtDepth, 2) == 9);
  CHECK(count(M::EqualFirst, 1) == 27);
  CHECK(count(M::EqualFirst, 2) == 9);
}

TEST_CASE("jacobi1d untiled and tiled against enumeration") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto tm = tiling::load_tilings(brute::model("jacobi1d.tile2x2.json"));
  auto tiled = tiling::tile_network(net, tm);
  brute::Tile bt{{{1, 0}, {1, 1}}, {2, 2}};
  std::map<std::string, brute::Pt> offsets{{"c4", {1, 1}}, {"c5", {1, 0}}, {"c6", {1, -1}}};
  for (const auto& pa : net.test_params) {
    for (const auto& c : net.channels) {
      auto v = patterns::classify(net, c, pa);
      CHECK_MESSAGE(v.pattern == PatternClass::Fifo, c.id);
    }
    for (const auto& [id, d] : offsets) {
      auto pairs = brute::jacobi_dep(pa.at("T"), pa.at("N"), d);
      auto v = patterns::classify(tiled, *tiled.find_channel(id), pa);
      CHECK(v.in_order == brute::in_order(pairs, brute::tiled_time(bt), brute::tiled_time(bt)));
      CHECK_FALSE(v.in_order);
      CHECK(v.unicity);
    }
  }
}

TEST_CASE("property: a constant schedule shift does not change the verdict") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 25; ++n) {
    auto c = brute::random_uniform_case(rng);
    auto net = ppn::parse_ppn(c.model_json());
    auto tiled = tiling::tile_network(net, {{"s", {c.tile.normals, c.tile.sizes}}});
    const auto& ch = tiled.channels.front();
    auto s = tiled.process("s").schedule;
    auto v = patterns::classify(ch.dataflow, s, s);
    auto shifted = s;
    std::int64_t k = std::uniform_int_distribution<std::int64_t>(-5, 5)(rng);
    for (auto& row : shifted.rows) row.constant_term() += k;
    auto w = patterns::classify(ch.dataflow, shifted, shifted);
    CHECK_MESSAGE(v.pattern == w.pattern, c.describe());
    auto pairs = brute::uniform_pairs(0, c.h - 1, 0, c.w - 1, c.d);
    CHECK_MESSAGE(v.in_order == brute::in_order(pairs, brute::tiled_time(c.tile), brute::tiled_time(c.tile)),
                  c.describe());
    CHECK(v.unicity);
  }
}

TEST_CASE("property: restricting a relation keeps in-order and unicity") {
  std::mt19937_64 rng(11);
  auto s = sched({"i", "j"}, {"i", "j"});
  auto full = presburger::parse_relation("{ [i - 1, j] -> [i, j] : 1 <= i <= 6 and 0 <= j <= 6 }");
  auto bcast = presburger::parse_relation("{ [i, k] -> [i, j] : 0 <= i <= 6 and 0 <= j <= 6 and k = 0 }");
  REQUIRE(patterns::classify(full, s, s).pattern == PatternClass::Fifo);
  REQUIRE(patterns::classify(bcast, s, s).pattern == PatternClass::InOrderWithMultiplicity);
  for (int n = 0; n < 20; ++n) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int ci = pick(-2, 3), cj = pick(-3, 3);
    std::string cut = "{ [a, b] -> [i, j] : " + std::to_string(ci) + "i " + (cj < 0 ? "- " : "+ ") +
                      std::to_string(std::abs(cj)) + "j <= " + std::to_string(pick(-4, 12)) + " }";
    auto restrict = presburger::parse_relation(cut).renamed(full.in_dims(), full.out_dims());
    CHECK_MESSAGE(patterns::classify(full.intersect(restrict), s, s).pattern == PatternClass::Fifo, cut);
    CHECK_MESSAGE(patterns::in_order(bcast.intersect(restrict), s, s), cut);
  }
}
