#include <string>

#include "doctest.h"
#include "ppnfifo/errors.hpp"
#include "ppnfifo/ppn/ppn.hpp"
#include "support.hpp"

using namespace ppnfifo;
using ppn::PPN;

namespace {

std::string two_process_model(const std::string& relation, const std::string& schedule = R"(["t", "i"])") {
  return R"({"name": "m", "params": [{"name": "N", "default": 4, "min": 1, "max": 10}],
    "processes": [
      {"name": "p", "dims": ["i"], "domain": "{ [i] : 0 <= i < N }", "schedule": ["i"], "phase": 0},
      {"name": "q", "dims": ["t", "i"], "domain": "{ [t, i] : 0 <= t < 2 and 0 <= i < N }", "schedule": )" +
         schedule + R"(, "phase": 1}],
    "channels": [{"id": "a", "producer": "p", "consumer": "q", "relation": ")" + relation + R"("}]})";
}

}  // namespace

TEST_CASE("jacobi1d model loads with its declared structure") {
  PPN net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  CHECK(net.name == "jacobi1d");
  CHECK(net.param_names() == std::vector<std::string>{"T", "N"});
  CHECK(net.processes.size() == 3);
  CHECK(net.channels.size() == 7);
  CHECK(net.test_params.size() == 2);
  const auto& compute = net.process("compute");
  CHECK(compute.dims() == std::vector<std::string>{"t", "i"});
  CHECK(compute.phase == 1);
  CHECK(compute.schedule.n_rows() == 2);
  CHECK(net.find_process("nope") == nullptr);
  CHECK(net.find_channel("c5") != nullptr);
  CHECK_THROWS_AS(net.process("nope"), InputError);
}

TEST_CASE("channel relations are restricted to the endpoint domains") {
  PPN net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto pa = net.assignment();
  // c5 is written with 0 < t, so t = 1 would read from t = 0 outside compute.
  auto pairs = net.find_channel("c5")->dataflow.instantiate(pa).enumerate_pairs();
  CHECK(pairs.size() == 56);
  for (const auto& [x, y] : pairs) {
    CHECK(x[0] == y[0] - 1);
    CHECK(x[1] == y[1]);
    CHECK(x[0] >= 1);
  }
  auto c7 = net.find_channel("c7")->dataflow.instantiate(pa).enumerate_pairs();
  CHECK(c7.size() == 8);
  for (const auto& [x, y] : c7) CHECK(x == brute::Pt{8, y[0]});
}

TEST_CASE("parameter assignment uses defaults and checks bounds") {
  PPN net = ppn::load_ppn(brute::model("jacobi1d.ppn.json"));
  auto pa = net.assignment({{"N", 16}});
  CHECK(pa.at("N") == 16);
  CHECK(pa.at("T") == 8);
  CHECK_THROWS_AS(net.assignment({{"N", 0}}), ValidationError);
  CHECK_THROWS_AS(net.assignment({{"K", 3}}), ValidationError);
}

TEST_CASE("missing parameter is reported by name") {
  auto text = std::string(R"({"name": "m", "params": ["N"], "processes": [
    {"name": "p", "dims": ["i"], "domain": "{ [i] : 0 <= i < N }", "schedule": ["i"]}], "channels": []})");
  PPN net = ppn::parse_ppn(text);
  try {
    net.require_params({});
    FAIL("expected MissingParameter");
  } catch (const MissingParameter& e) {
    CHECK(std::string(e.what()).find("N") != std::string::npos);
  }
  CHECK_NOTHROW(net.require_params({{"N", 3}}));
}

TEST_CASE("validation accepts the bundled corpus at its test parameters") {
  for (const char* f : {"jacobi1d.ppn.json", "gemm.ppn.json", "seidel1d.ppn.json", "longdep.ppn.json"}) {
    PPN net = ppn::load_ppn(brute::model(f));
    for (const auto& pa : net.test_params) {
      auto rep = ppn::validate_at(net, pa);
      CHECK_MESSAGE(rep.ok(), f << ": " << rep.first_failure());
    }
  }
}

TEST_CASE("validation names the broken invariant") {
  SUBCASE("non-injective schedule") {
    PPN net = ppn::parse_ppn(two_process_model("{ [i] -> [t, i] : t = 0 }", R"(["i"])"));
    auto rep = ppn::validate_at(net, net.assignment());
    CHECK_FALSE(rep.ok());
    CHECK(rep.first_failure().find("injectivity") != std::string::npos);
    CHECK_THROWS_AS(ppn::parse_ppn(two_process_model("{ [i] -> [t, i] : t = 0 }", R"(["i"])"),
                                   ppn::ParamAssignment{{"N", 4}}),
                    ValidationError);
  }
  SUBCASE("overlapping channels between the same processes") {
    auto text = std::string(R"({"name": "m", "params": [],
      "processes": [
        {"name": "p", "dims": ["i"], "domain": "{ [i] : 0 <= i < 4 }", "schedule": ["i"], "phase": 0},
        {"name": "q", "dims": ["i"], "domain": "{ [i] : 0 <= i < 4 }", "schedule": ["i"], "phase": 1}],
      "channels": [
        {"id": "a", "producer": "p", "consumer": "q", "relation": "{ [i] -> [i] : i <= 2 }"},
        {"id": "b", "producer": "p", "consumer": "q", "relation": "{ [i] -> [i] : i >= 2 }"}]})");
    PPN net = ppn::parse_ppn(text);
    auto rep = ppn::validate_at(net, {});
    CHECK_FALSE(rep.ok());
    CHECK(rep.first_failure().find("disjoint") != std::string::npos);
    CHECK(rep.first_failure().find("(2) -> (2)") != std::string::npos);
  }
}

TEST_CASE("malformed models are input errors") {
  CHECK_THROWS_AS(ppn::parse_ppn("{"), InputError);
  CHECK_THROWS_AS(ppn::parse_ppn(two_process_model("{ [i] -> [t, i] : t = 0 ")), ParseError);
  // unknown process
  CHECK_THROWS_AS(ppn::parse_ppn(R"({"name": "m", "params": [], "processes": [], "channels": [
      {"id": "a", "producer": "p", "consumer": "q", "relation": "{ [i] -> [i] : true }"}]})"),
                  InputError);
  // existential domains are not supported
  CHECK_THROWS_AS(ppn::parse_ppn(R"({"name": "m", "params": [], "processes": [
      {"name": "p", "dims": ["i"], "domain": "{ [i] : exists e : i = 2e and 0 <= i < 8 }", "schedule": ["i"]}],
      "channels": []})"),
                  ValidationError);
  // tuple arity against the process dims
  CHECK_THROWS_AS(ppn::parse_ppn(two_process_model("{ [i] -> [i] : true }")), InputError);
}

TEST_CASE("schedules evaluate affine rows") {
  auto s = ppn::make_schedule("theta", {"t", "i"}, {"N"}, {"t", "2t + i - N"});
  auto pv = s.param_values({{"N", 5}});
  CHECK(s.at({3, 4}, pv) == brute::Pt{3, 5});
  CHECK_THROWS_AS(s.param_values({}), MissingParameter);
}

TEST_CASE("model JSON round-trips") {
  for (const char* f : {"jacobi1d.ppn.json", "gemm.ppn.json", "seidel1d.ppn.json", "longdep.ppn.json"}) {
    PPN net = ppn::load_ppn(brute::model(f));
    PPN again = ppn::parse_ppn(ppn::dump_ppn(net));
    CHECK_MESSAGE(again == net, f);
    for (const auto& c : net.channels) {
      auto pa = net.test_params.front();
      CHECK(again.find_channel(c.id)->dataflow.instantiate(pa).enumerate_pairs() ==
            c.dataflow.instantiate(pa).enumerate_pairs());
    }
  }
}
