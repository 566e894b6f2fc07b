#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "danforge/error.hpp"
#include "danforge/netgraph.hpp"
#include "oracles.hpp"

using namespace danforge;

TEST_CASE("from_edges merges repeats and rejects self-loops") {
  const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}};
  const auto g = HostNetwork::from_edges(3, edges);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
  CHECK_FALSE(g.has_edge(0, 2));
  const std::vector<Edge> loop{{1, 1}};
  CHECK_THROWS_AS(HostNetwork::from_edges(3, loop), Error);
  const std::vector<Edge> range{{0, 3}};
  CHECK_THROWS_AS(HostNetwork::from_edges(3, range), Error);
}

TEST_CASE("bfs distances") {
  const auto p = HostNetwork::from_edges(3, oracle::path(3));
  CHECK(bfs_distances(p, 0) == std::vector<Hops>{0, 1, 2});
  const std::vector<Edge> one{{0, 1}};
  const auto split = HostNetwork::from_edges(3, one);
  CHECK(bfs_distances(split, 0)[2] == kUnreachable);
  CHECK(bfs_distances_bounded(HostNetwork::from_edges(5, oracle::path(5)), 0, 2)[3] == kUnreachable);

  SplitMix64 rng(3);
  const auto g = oracle::random_connected_graph(rng, 50, 0.04);
  const auto fw = oracle::all_pairs(g);
  for (NodeId s : {0u, 17u, 49u}) {
    const auto d = bfs_distances(g, s);
    for (std::size_t t = 0; t < 50; ++t) CHECK(static_cast<long long>(d[t]) == fw[s][t]);
  }
}

TEST_CASE("epl") {
  SplitMix64 rng(8);
  const auto d = oracle::random_demand(rng, 12, 0.3);
  CHECK(epl(d, HostNetwork::support_of(d)) == doctest::Approx(1.0).epsilon(1e-12));

  const auto star = HostNetwork::from_edges(4, oracle::star(4));
  const auto leaves = normalize(4, std::vector<WeightedPair>{{1, 2, 1.0}});
  CHECK(epl(leaves, star) == 2.0);

  for (int trial = 0; trial < 20; ++trial) {
    const auto dem = oracle::random_demand(rng, 20, 0.15);
    const auto g = oracle::random_connected_graph(rng, 20, 0.05);
    CHECK(epl(dem, g) == doctest::Approx(oracle::epl(dem, oracle::all_pairs(g))).epsilon(1e-12));
  }

  const std::vector<Edge> one{{0, 1}};
  const auto far = normalize(3, std::vector<WeightedPair>{{0, 2, 1.0}});
  CHECK(std::isinf(epl(far, HostNetwork::from_edges(3, one))));
  CHECK_THROWS_AS(epl(far, HostNetwork::from_edges(4, one)), Error);
}

TEST_CASE("degree stats") {
  auto s = degree_stats(HostNetwork::from_edges(4, oracle::cycle(4)));
  CHECK(s.max_degree == 2);
  CHECK(s.avg_degree == 2.0);
  s = degree_stats(HostNetwork::from_edges(5, oracle::star(5)));
  CHECK(s.max_degree == 4);
  CHECK(s.avg_degree == doctest::Approx(1.6));

  SplitMix64 rng(4);
  const auto g = oracle::random_connected_graph(rng, 30, 0.1);
  std::size_t mx = 0, total = 0;
  for (NodeId v = 0; v < 30; ++v) {
    std::size_t deg = 0;
    for (NodeId w = 0; w < 30; ++w) deg += g.has_edge(v, w) ? 1 : 0;
    mx = std::max(mx, deg);
    total += deg;
  }
  CHECK(degree_stats(g).max_degree == mx);
  CHECK(degree_stats(g).avg_degree == doctest::Approx(total / 30.0));
}

TEST_CASE("neighborhood distortion") {
  const auto c4 = HostNetwork::from_edges(4, oracle::cycle(4));
  CHECK(neighborhood_distortion(c4, c4) == 1.0);
  const auto p4 = HostNetwork::from_edges(4, oracle::path(4));
  CHECK(neighborhood_distortion(c4, p4) == doctest::Approx(1.5));
  const auto d = oracle::uniform_symmetric(4, oracle::cycle(4));
  CHECK(neighborhood_distortion(d, p4) == doctest::Approx(1.5));

  const std::vector<Edge> one{{0, 1}};
  CHECK(std::isinf(neighborhood_distortion(c4, HostNetwork::from_edges(4, one))));

  SplitMix64 rng(64);
  const auto g = oracle::random_connected_graph(rng, 40, 0.1);
  const auto s = oracle::random_connected_graph(rng, 40, 0.02);
  const auto fw = oracle::all_pairs(s);
  double sum = 0;
  for (const auto& e : g.edges()) sum += static_cast<double>(fw[e.u][e.v]);
  CHECK(neighborhood_distortion(g, s) == doctest::Approx(sum / g.edge_count()).epsilon(1e-12));
}

TEST_CASE("all-pairs distortion") {
  const auto k4 = HostNetwork::from_edges(4, oracle::complete(4));
  CHECK(all_pairs_distortion(k4, k4) == 1.0);
  CHECK(all_pairs_distortion(k4, HostNetwork::from_edges(4, oracle::star(4))) == doctest::Approx(1.5));
  const std::vector<Edge> one{{0, 1}};
  CHECK_THROWS_AS(all_pairs_distortion(HostNetwork::from_edges(3, one), HostNetwork::from_edges(3, one)), Error);

  SplitMix64 rng(9);
  const auto g = oracle::random_connected_graph(rng, 25, 0.15);
  const auto s = oracle::random_connected_graph(rng, 25, 0.0);
  const auto dg = oracle::all_pairs(g), ds = oracle::all_pairs(s);
  double sum = 0;
  for (std::size_t a = 0; a < 25; ++a) {
    for (std::size_t b = a + 1; b < 25; ++b) sum += static_cast<double>(ds[a][b]) / static_cast<double>(dg[a][b]);
  }
  const auto report = measure_distortion(g, s, true);
  CHECK(report.apd == doctest::Approx(sum / 300.0).epsilon(1e-12));
  CHECK(std::isnan(measure_distortion(g, s, false).apd));
}

TEST_CASE("uniform demand: epl equals neighborhood distortion") {
  SplitMix64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const auto g = oracle::random_connected_graph(rng, 30, 0.1);
    const auto d = oracle::uniform_symmetric(30, g.edges());
    const auto s = oracle::random_connected_graph(rng, 30, 0.01);
    CHECK(epl(d, s) == doctest::Approx(neighborhood_distortion(g, s)).epsilon(1e-12));
  }
}
