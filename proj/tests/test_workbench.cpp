#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "danforge/error.hpp"
#include "danforge/generators.hpp"
#include "danforge/io.hpp"
#include "danforge/workbench.hpp"
#include "oracles.hpp"

using namespace danforge;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "danforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream captured;
  auto* old_out = std::cout.rdbuf(captured.rdbuf());
  std::ostringstream errors;
  auto* old_err = std::cerr.rdbuf(errors.rdbuf());
  const int code = cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, captured.str()};
}

fs::path scratch() {
  const auto dir = fs::temp_directory_path() / "danforge_workbench_test";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("demand JSON round trip") {
  SplitMix64 rng(1);
  const auto d = oracle::random_demand(rng, 7, 0.4);
  const auto back = demand_from_json(Json::parse(demand_to_json(d).dump()));
  REQUIRE(back.support_size() == d.support_size());
  for (std::size_t k = 0; k < d.support_size(); ++k) CHECK(back.entries()[k].p == d.entries()[k].p);

  const auto raw = Json::parse(R"({"n": 3, "entries": [{"src": 0, "dst": 1, "w": 3}, {"src": 2, "dst": 1, "w": 1}]})");
  CHECK(demand_from_json(raw).probability(0, 1) == doctest::Approx(0.75));
  CHECK_THROWS_AS(demand_from_json(Json::parse(R"({"entries": []})")), Error);
  CHECK_THROWS_AS(demand_from_json(Json::parse(R"({"n": 2, "entries": [{"src": 0, "dst": 1, "w": 0.5}], "normalized": true})")),
                  Error);
}

TEST_CASE("graph formats round trip") {
  const auto g = HostNetwork::from_edges(5, oracle::cycle(5));
  std::istringstream text(graph_to_text(g));
  CHECK(graph_from_text(text).edges() == g.edges());
  CHECK(graph_from_json(graph_to_json(g)).edges() == g.edges());
  std::istringstream shortfile("3 2\n0 1\n");
  CHECK_THROWS_AS(graph_from_text(shortfile), Error);
  std::istringstream range("3 1\n0 3\n");
  CHECK_THROWS_AS(graph_from_text(range), Error);
}

TEST_CASE("CSV layout") {
  BenchRecord r;
  r.instance_id = "x-0001";
  r.family = "tree";
  r.n = 10;
  r.m = 9;
  r.algo = "tree";
  r.epl = 1.0 / 3.0;
  r.h_xy = 2.0;
  r.ratio_epl_over_entropy = 123456789.0;
  const std::vector<BenchRecord> rows{r};
  const auto csv = to_csv(rows);
  CHECK(csv.rfind("instance_id,family,n,m,algo,delta_bound_claimed,max_degree_observed,epl,h_xy,h_yx,"
                  "lower_bound,ratio_epl_over_entropy,wall_time_ms",
                  0) == 0);
  CHECK(csv.find("x-0001,tree,10,9,tree,0,0,0.333333,2,0,0,1.23457e+08,0,,") != std::string::npos);
}

TEST_CASE("suites are deterministic and sorted") {
  const auto a = to_csv(run_suite("distortion_divergence", 5));
  const auto b = to_csv(run_suite("distortion_divergence", 5));
  CHECK(a == b);
  const auto recs = run_suite("hypercube_family", 1);
  for (std::size_t k = 1; k < recs.size(); ++k) CHECK(recs[k - 1].instance_id <= recs[k].instance_id);
  CHECK_THROWS_AS(run_suite("nope", 1), Error);
  CHECK(suite_names().size() == 6);
}

TEST_CASE("CLI gen, eval, lb, build, verify") {
  const auto dir = scratch();
  const auto demand = (dir / "d.json").string(), support = (dir / "s.txt").string();
  auto g = run({"gen", "--family", "regular_uniform", "--n", "200", "--r", "64", "--seed", "3", "--out", demand,
                "--support-out", support});
  REQUIRE(g.code == 0);
  CHECK(Json::parse(slurp(demand))["meta"]["rng"] == "splitmix64");

  auto e = run({"eval", "--demand", demand, "--graph", support});
  REQUIRE(e.code == 0);
  CHECK(Json::parse(e.out)["epl"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));

  auto lb = run({"lb", "--demand", demand, "--delta", "3"});
  REQUIRE(lb.code == 0);
  CHECK(Json::parse(lb.out)["lower_bound"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));

  const auto net = (dir / "n.txt").string();
  auto b = run({"build", "--demand", demand, "--algo", "dary", "--delta", "3", "--out", net});
  REQUIRE(b.code == 0);
  CHECK(Json::parse(b.out)["max_degree"] == 4);
  CHECK(run({"verify", "--demand", demand, "--graph", net, "--delta", "4"}).code == 0);
  CHECK(run({"verify", "--demand", demand, "--graph", net, "--delta", "3"}).code == 1);

  // Determinism: same command, same bytes.
  CHECK(run({"build", "--demand", demand, "--algo", "sparse"}).out ==
        run({"build", "--demand", demand, "--algo", "sparse"}).out);
}

TEST_CASE("CLI verify flags disconnected pairs") {
  const auto dir = scratch();
  const auto demand = (dir / "p.json").string(), graph = (dir / "p.txt").string();
  std::ofstream(demand) << R"({"n": 3, "entries": [{"src": 0, "dst": 2, "w": 1}], "normalized": false})";
  std::ofstream(graph) << "3 1\n0 1\n";
  const auto v = run({"verify", "--demand", demand, "--graph", graph, "--delta", "5"});
  CHECK(v.code == 1);
  CHECK(Json::parse(v.out)["disconnected_pairs"] == 1);
}

TEST_CASE("CLI oracle and spanner") {
  const auto dir = scratch();
  const auto demand = (dir / "k5.json").string();
  REQUIRE(run({"gen", "--family", "complete_uniform", "--n", "5", "--out", demand}).code == 0);
  auto o = run({"oracle", "--demand", demand, "--delta", "2"});
  REQUIRE(o.code == 0);
  const auto doc = Json::parse(o.out);
  CHECK(doc["optimum"].get<double>() == doctest::Approx(1.5));
  CHECK(doc["witness_edges"].size() == 5);

  auto s = run({"spanner", "--algo", "hypercube", "--d", "4"});
  REQUIRE(s.code == 0);
  CHECK(Json::parse(s.out)["max_stretch"].get<double>() <= 3.0);
  auto gr = run({"spanner", "--algo", "greedy", "--t", "3", "--demand", demand});
  CHECK(gr.code == 0);
}

TEST_CASE("CLI exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"lb", "--delta", "3"}).code == 2);
  CHECK(run({"build", "--demand", "x.json", "--algo", "magic"}).code == 2);
  CHECK(run({"lb", "--demand", "/nonexistent/d.json", "--delta", "3"}).code == 1);
  CHECK(run({"bench", "--suite", "nope"}).code == 1);
  CHECK(run({"gen", "--family", "tree", "--n", "1"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}
