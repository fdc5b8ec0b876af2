#include "doctest.h"
#include "ppnfifo/cli/report.hpp"
#include "ppnfifo/errors.hpp"
#include "support.hpp"

using namespace ppnfifo;
using patterns::PatternClass;

TEST_CASE("parameter lists") {
  auto pa = cli::parse_params("T=8,N=16");
  CHECK(pa.at("T") == 8);
  CHECK(pa.at("N") == 16);
  CHECK(cli::parse_params("").empty());
  CHECK(cli::parse_params(" N = -3 ").at("N") == -3);
  CHECK_THROWS_AS(cli::parse_params("N"), InputError);
  CHECK_THROWS_AS(cli::parse_params("N=x"), InputError);
  CHECK_THROWS_AS(cli::parse_params("N=1,N=2"), InputError);
}

TEST_CASE("analyze jacobi1d") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto tm = tiling::load_tilings(brute::model("jacobi1d.tile2x2.json"));
  cli::Options o;
  o.params = {{"T", 8}, {"N", 8}};
  SUBCASE("untiled") {
    auto r = cli::analyze(net, nullptr, o);
    CHECK_FALSE(r.after.has_value());
    CHECK(r.before.summary.n_channels == 7);
    CHECK(r.before.summary.n_fifo == 7);
    CHECK(r.before.summary.pct_fifo() == "100%");
    CHECK(r.oracle_agreement == true);
  }
  SUBCASE("tiled") {
    auto r = cli::analyze(net, &tm, o);
    REQUIRE(r.after.has_value());
    CHECK(r.after->summary.n_fifo == 4);
    CHECK(r.after->summary.pct_fifo() == "57%");
    for (const char* id : {"c4", "c5", "c6"}) {
      CHECK_FALSE(r.after->find(id)->in_order);
      CHECK(r.after->find(id)->unicity);
    }
    CHECK(r.oracle_agreement == true);
  }
  SUBCASE("without oracle") {
    o.oracle = false;
    auto r = cli::analyze(net, &tm, o);
    CHECK_FALSE(r.oracle_agreement.has_value());
    CHECK_FALSE(r.before.channels.front().oracle_agrees.has_value());
    CHECK(cli::to_json(r).find("oracle_agreement") == std::string::npos);
  }
  SUBCASE("missing parameter") {
    auto bare = net;
    for (auto& p : bare.params) p.default_value.reset();
    o.params = {{"T", 8}};
    try {
      cli::analyze(bare, nullptr, o);
      FAIL("expected MissingParameter");
    } catch (const MissingParameter& e) {
      CHECK(std::string(e.what()).find("N") != std::string::npos);
    }
  }
}

TEST_CASE("fifoize report") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto tm = tiling::load_tilings(brute::model("jacobi1d.tile2x2.json"));
  cli::Options o;
  auto run = cli::run_fifoize(net, tm, o);
  const auto& r = run.report;
  REQUIRE(r.after.has_value());
  CHECK(r.before.name == "tiled");
  CHECK(r.after->name == "split");
  CHECK(r.after->summary.n_channels == 11);
  CHECK(r.after->summary.n_fifo == 11);
  CHECK(r.after->summary.n_fifo_split == 7);
  CHECK(r.after->summary.pct_fifo_split() == "100%");
  REQUIRE(r.sizes.has_value());
  CHECK(r.sizes->fail == 32);
  CHECK(r.sizes->split == 33);
  CHECK(r.oracle_agreement == true);
  CHECK(run.network.channels.size() == 11);
  auto tiled = cli::analyze(net, &tm, o);
  CHECK(cli::delta_from_reports(tiled, r) == *r.sizes);
  CHECK(cli::delta_from_reports(r, r) == cli::SizeDelta{0, 0});
}

TEST_CASE("report JSON round-trips") {
  auto net = ppn::load_ppn(brute::model("longdep.ppn.json"));
  auto tm = tiling::load_tilings(brute::model("longdep.tile.json"));
  cli::Options o;
  auto r = cli::run_fifoize(net, tm, o).report;
  CHECK(cli::report_from_json(cli::to_json(r)) == r);
  auto a = cli::analyze(net, &tm, o);
  CHECK(cli::report_from_json(cli::to_json(a)) == a);
  o.oracle = false;
  auto b = cli::analyze(net, nullptr, o);
  CHECK(cli::report_from_json(cli::to_json(b)) == b);
  CHECK_THROWS_AS(cli::report_from_json("{}"), InputError);
}

TEST_CASE("text table uses the fixed column set") {
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto tm = tiling::load_tilings(brute::model("jacobi1d.tile2x2.json"));
  auto text = cli::to_text(cli::run_fifoize(net, tm, {}).report);
  CHECK(text.find("stage  #channel  #fifo  #fifo-split  %fifo  %fifo-split  fifo-size  total-size") !=
        std::string::npos);
}

TEST_CASE("delta") {
  CHECK(cli::SizeDelta{512, 288}.delta() == "-44%");
  CHECK(cli::SizeDelta{256, 256}.delta() == "0%");
  CHECK(cli::SizeDelta{0, 0}.delta() == "");
  auto table = cli::delta_table("gemm", {512, 288});
  CHECK(table.find("-44%") != std::string::npos);
  auto net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto tm = tiling::load_tilings(brute::model("jacobi1d.tile2x2.json"));
  cli::Options o;
  o.oracle = false;
  auto a = cli::run_fifoize(net, tm, o).report;
  o.params = {{"N", 12}};
  auto b = cli::run_fifoize(net, tm, o).report;
  CHECK_THROWS_AS(cli::delta_from_reports(a, b), MismatchedReports);
}
