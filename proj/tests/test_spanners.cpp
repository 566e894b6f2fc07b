#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "danforge/error.hpp"
#include "danforge/generators.hpp"
#include "danforge/spanners.hpp"
#include "oracles.hpp"

using namespace danforge;

namespace {

HostNetwork thick_grid(std::size_t side, std::size_t radius) {
  GenSpec spec;
  spec.family = Family::thick_grid;
  spec.rows = spec.cols = side;
  spec.radius = radius;
  return generate(spec).support;
}

// Both net conditions, checked against all-pairs distances.
void check_net(const HostNetwork& g, const Clustering& c) {
  const auto fw = oracle::all_pairs(g);
  for (std::size_t a = 0; a < c.net_nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < c.net_nodes.size(); ++b) CHECK(fw[c.net_nodes[a]][c.net_nodes[b]] > 2);
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    long long best = oracle::kInf;
    for (NodeId h : c.net_nodes) best = std::min(best, fw[v][h]);
    CHECK(best <= 2);
    CHECK(fw[v][c.head[v]] == best);
  }
}

long long max_stretch(const HostNetwork& g, const HostNetwork& s) {
  const auto fw = oracle::all_pairs(s);
  long long worst = 0;
  for (const auto& e : g.edges()) worst = std::max(worst, fw[e.u][e.v]);
  return worst;
}

}  // namespace

TEST_CASE("2-net of a star is its hub") {
  const auto g = HostNetwork::from_edges(9, oracle::star(9));
  const auto c = build_2net(g);
  REQUIRE(c.net_nodes.size() == 1);
  CHECK(c.net_nodes[0] == 0);
  check_net(g, c);
}

TEST_CASE("2-net conditions") {
  check_net(HostNetwork::from_edges(7, oracle::path(7)), build_2net(HostNetwork::from_edges(7, oracle::path(7))));
  const auto grid = thick_grid(20, 1);
  check_net(grid, build_2net(grid));
  SplitMix64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = oracle::random_connected_graph(rng, 60, 0.05);
    check_net(g, build_2net(g));
  }
}

TEST_CASE("LDD spanner on a diameter-2 graph") {
  const auto g = HostNetwork::from_edges(8, oracle::complete(8));
  const auto s = build_ldd_spanner(g, SpannerVariant::subgraph);
  CHECK(s.cluster_count == 1);
  CHECK(max_stretch(g, s.spanner) <= 4);
}

TEST_CASE("LDD spanner stretch on a thick grid") {
  const auto g = thick_grid(15, 2);
  const auto sub = build_ldd_spanner(g, SpannerVariant::subgraph);
  const auto met = build_ldd_spanner(g, SpannerVariant::metric);
  CHECK(max_stretch(g, sub.spanner) <= 9);
  CHECK(max_stretch(g, met.spanner) <= 5);
  CHECK(sub.distortion.max_demand_distortion == static_cast<double>(max_stretch(g, sub.spanner)));
  for (const auto& e : sub.spanner.edges()) CHECK(g.has_edge(e.u, e.v));
  CHECK(sub.edge_count < g.edge_count());

  const double lambda = static_cast<double>(local_doubling_estimate(g));
  CHECK(static_cast<double>(sub.max_cluster_links) <= std::pow(lambda, 4));
  CHECK(static_cast<double>(sub.edge_count) <= 225 + static_cast<double>(sub.cluster_count) * std::pow(lambda, 4));
}

TEST_CASE("greedy spanner") {
  SplitMix64 rng(21);
  const auto g = oracle::random_connected_graph(rng, 40, 0.2);
  CHECK(greedy_spanner(g, 1).spanner.edges() == g.edges());
  CHECK_THROWS_AS(greedy_spanner(g, 0), Error);

  for (std::size_t t : {3, 5}) {
    const auto s = greedy_spanner(g, t);
    CHECK(max_stretch(g, s.spanner) <= static_cast<long long>(t));
    CHECK(s.distortion.nd <= static_cast<double>(t));
  }

  // C4 plus the chord (0,2): replay the greedy rule with all-pairs distances.
  auto edges = oracle::cycle(4);
  edges.emplace_back(0, 2);
  const auto c4 = HostNetwork::from_edges(4, edges);
  const auto s = greedy_spanner(c4, 3);
  std::vector<Edge> kept;
  for (const auto& e : c4.edges()) {
    if (oracle::all_pairs(4, kept)[e.u][e.v] > 3) kept.push_back(e);
  }
  CHECK(s.spanner.edges() == HostNetwork::from_edges(4, kept).edges());
  CHECK(s.edge_count == 3);
}

TEST_CASE("hypercube spanner") {
  const auto s1 = hypercube_spanner(1);
  CHECK(s1.edge_count == 1);
  CHECK(s1.distortion.max_demand_distortion == 1.0);

  const auto s3 = hypercube_spanner(3);
  CHECK(s3.edge_count < 12);
  CHECK(max_stretch(hypercube_graph(3), s3.spanner) <= 3);

  for (std::size_t d : {6, 8}) {
    const auto q = hypercube_graph(d);
    const auto s = hypercube_spanner(d);
    CHECK(max_stretch(q, s.spanner) <= 3);
    CHECK(s.edge_count <= 4 * q.node_count());
    for (const auto& e : s.spanner.edges()) CHECK(q.has_edge(e.u, e.v));
  }
  CHECK_THROWS_AS(hypercube_spanner(0), Error);
  CHECK_THROWS_AS(hypercube_spanner(21), Error);
}

TEST_CASE("local doubling estimate") {
  CHECK(local_doubling_estimate(HostNetwork::from_edges(10, oracle::complete(10))) == 1);
  const auto c8 = local_doubling_estimate(HostNetwork::from_edges(8, oracle::cycle(8)));
  CHECK(c8 >= 2);
  CHECK(c8 <= 3);
  CHECK(local_doubling_estimate(thick_grid(10, 2)) == local_doubling_estimate(thick_grid(20, 2)));
}

TEST_CASE("disconnected hosts skip APD") {
  const std::vector<Edge> two_paths{{0, 1}, {1, 2}, {3, 4}, {4, 5}};
  const auto g = HostNetwork::from_edges(6, two_paths);
  const auto s = build_ldd_spanner(g, SpannerVariant::subgraph);
  CHECK(std::isnan(s.distortion.apd));
  CHECK(max_stretch(g, s.spanner) <= 9);
}
