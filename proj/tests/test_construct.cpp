#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "danforge/construct.hpp"
#include "danforge/error.hpp"
#include "danforge/generators.hpp"
#include "oracles.hpp"

using namespace danforge;

namespace {

double entropy_sum(const Demand& d) { return oracle::h_x_given_y(d, 2) + oracle::h_y_given_x(d, 2); }

void check_report(const Demand& d, const BuildReport& r) {
  CHECK(r.network.node_count() == d.node_count());
  CHECK(r.max_degree == degree_stats(r.network).max_degree);
  CHECK(r.epl == doctest::Approx(oracle::epl(d, oracle::all_pairs(r.network))).epsilon(1e-12));
  CHECK(r.h_xy == doctest::Approx(oracle::h_x_given_y(d, 2)).epsilon(1e-12));
  CHECK(r.h_yx == doctest::Approx(oracle::h_y_given_x(d, 2)).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(r.epl / (r.h_xy + r.h_yx + 2)));
}

}  // namespace

TEST_CASE("tree DAN on a bidirectional star") {
  const auto d = oracle::uniform_symmetric(17, oracle::star(17));
  const auto r = build_tree_dan(d);
  check_report(d, r);
  CHECK(r.max_degree <= 8);
  CHECK(r.epl <= 2 * std::log2(16.0) + 2 + 1e-9);
  CHECK(r.epl <= std::log2(16.0) + 1 + 1e-9);
}

TEST_CASE("tree DAN keeps an already low-degree path") {
  const auto d = oracle::uniform_over(3, {{0, 1}, {1, 2}});
  const auto r = build_tree_dan(d);
  CHECK(r.network.has_edge(0, 1));
  CHECK(r.network.has_edge(1, 2));
  CHECK(r.epl == doctest::Approx(1.0));
  CHECK(build_tree_dan(d, TreeRoot::node_zero).epl == doctest::Approx(1.0));
}

TEST_CASE("tree DAN on random skewed trees") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    GenSpec spec;
    spec.family = Family::tree;
    spec.n = 200;
    spec.seed = seed;
    spec.skew = static_cast<double>(seed % 3);
    const auto g = generate(spec);
    const auto r = build_tree_dan(g.demand);
    check_report(g.demand, r);
    CHECK(r.max_degree <= 8);
    CHECK(r.epl <= 3 * (entropy_sum(g.demand) + 2));
    CHECK(build_tree_dan(g.demand, TreeRoot::node_zero).max_degree <= 8);
  }
  CHECK_THROWS_AS(build_tree_dan(oracle::uniform_symmetric(4, oracle::cycle(4))), Error);
}

TEST_CASE("sparse DAN leaves low-degree demands alone") {
  const auto d = oracle::uniform_symmetric(8, oracle::cycle(8));
  const auto r = build_sparse_dan(d);
  CHECK(r.helpers.empty());
  CHECK(r.network.edges() == HostNetwork::support_of(d).edges());
  CHECK(r.epl == doctest::Approx(1.0));
}

TEST_CASE("sparse DAN on complete bipartite K_{2,n-2}") {
  const std::size_t n = 40;
  std::vector<Edge> edges;
  for (NodeId hub : {0u, 1u}) {
    for (NodeId v = 2; v < n; ++v) edges.emplace_back(hub, v);
  }
  const auto d = oracle::uniform_symmetric(n, edges);
  const auto r = build_sparse_dan(d);
  check_report(d, r);
  CHECK(r.max_degree <= r.degree_bound);
  CHECK(r.degree_bound == 12 * static_cast<std::size_t>(std::ceil(r.avg_degree)));
  CHECK(r.max_degree < 38);
  CHECK(r.epl <= 2 * (entropy_sum(d) + 2));
}

TEST_CASE("sparse DAN on random sparse demands") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    GenSpec spec;
    spec.family = Family::sparse_random;
    spec.n = 100;
    spec.m = 300;
    spec.seed = rng.next();
    spec.hub_skew = trial % 2 == 0 ? 0.0 : 1.5;
    const auto g = generate(spec);
    const auto r = build_sparse_dan(g.demand);
    check_report(g.demand, r);
    CHECK(r.max_degree <= r.degree_bound);
    CHECK(r.degree_bound <= 12 * 6);
    CHECK(std::isfinite(r.epl));
    // Every helper is a distinct-from-endpoints node.
    for (const auto& h : r.helpers) {
      CHECK(h.helper != h.src);
      CHECK(h.helper != h.dst);
    }
  }
}

TEST_CASE("degree reduction on a star") {
  const auto g = HostNetwork::from_edges(16, oracle::star(16));
  const auto red = reduce_degree(g);
  const auto& cert = red.certificate;
  CHECK(cert.avg_degree == doctest::Approx(1.875));
  CHECK(red.graph.degree(0) == 2);
  CHECK(cert.degree_bound == 16);
  CHECK(cert.stretch_bound == 8);
  CHECK(cert.holds(degree_stats(red.graph).max_degree));
  CHECK(cert.stretch.size() == 15);
}

TEST_CASE("degree reduction leaves regular graphs unchanged") {
  // Circulant 3-regular graph on 10 nodes (ring plus antipodes).
  auto edges = oracle::cycle(10);
  for (NodeId i = 0; i < 5; ++i) edges.emplace_back(i, i + 5);
  const auto g = HostNetwork::from_edges(10, edges);
  const auto red = reduce_degree(g);
  CHECK(red.graph.edges() == g.edges());
  CHECK(red.certificate.high_nodes.empty());
  CHECK(red.certificate.max_stretch == 1);
  CHECK_THROWS_AS(reduce_degree(HostNetwork(1)), Error);
}

TEST_CASE("degree reduction certificate is truthful on clique plus lines") {
  GenSpec spec;
  spec.family = Family::clique_lines;
  spec.n = 256;
  const auto gen = generate(spec);
  const auto red = reduce_degree(gen.support);
  const auto& cert = red.certificate;
  CHECK(cert.holds(degree_stats(red.graph).max_degree));
  CHECK_FALSE(cert.helpers_over_capacity);
  const auto fw = oracle::all_pairs(red.graph);
  REQUIRE(cert.stretch.size() == gen.support.edge_count());
  for (const auto& s : cert.stretch) CHECK(static_cast<long long>(s.distance) == fw[s.edge.u][s.edge.v]);
}

TEST_CASE("spanner to DAN on a regular uniform demand") {
  for (std::size_t r : {4, 8, 16}) {
    GenSpec spec;
    spec.family = Family::regular_uniform;
    spec.n = 64;
    spec.r = r;
    spec.seed = r;
    const auto gen = generate(spec);
    const auto rep = spanner_to_dan(gen.demand, gen.support);
    check_report(gen.demand, rep);
    CHECK(rep.warnings.empty());
    REQUIRE(rep.spanner_epl.has_value());
    CHECK(*rep.spanner_epl == doctest::Approx(1.0));
    CHECK(rep.epl <= 2 * std::ceil(std::log2(static_cast<double>(r))) + 1e-9);
  }
  SplitMix64 rng(1);
  const auto skewed = oracle::random_demand(rng, 10, 0.3);
  CHECK_FALSE(spanner_to_dan(skewed, HostNetwork::support_of(skewed)).warnings.empty());
}

TEST_CASE("d-ary tree DAN") {
  const auto two = oracle::uniform_symmetric(2, oracle::path(2));
  const auto r2 = build_dary_dan(two, 2);
  CHECK(r2.network.edge_count() == 1);
  CHECK(r2.epl == 1.0);

  const auto k27 = oracle::uniform_symmetric(27, oracle::complete(27));
  const auto r = build_dary_dan(k27, 3);
  check_report(k27, r);
  CHECK(r.epl <= 6.0);
  CHECK(r.max_degree <= 4);

  // Every node demands ~sqrt(n) others: EPL <= 2 log_10 100 = 4.
  SplitMix64 rng(100);
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < 100; ++a) {
    for (NodeId b = 0; b < 100; ++b) {
      if (a != b && (rng.uniform() < 0.1 || (a + 1) % 100 == b)) pairs.emplace_back(a, b);
    }
  }
  CHECK(build_dary_dan(oracle::uniform_over(100, pairs), 10).epl <= 4.0);
  CHECK_THROWS_AS(build_dary_dan(k27, 1), Error);
}
