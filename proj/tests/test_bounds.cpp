#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "danforge/bounds.hpp"
#include "danforge/error.hpp"
#include "oracles.hpp"

using namespace danforge;

namespace {

Demand regular_uniform(std::size_t n, std::size_t r) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId i = 0; i < n; ++i) {
    for (std::size_t off = 1; off <= r / 2; ++off) {
      pairs.emplace_back(i, static_cast<NodeId>((i + off) % n));
      pairs.emplace_back(static_cast<NodeId>((i + off) % n), i);
    }
  }
  return oracle::uniform_over(n, pairs);
}

Demand complete_uniform(std::size_t n) {
  return oracle::uniform_symmetric(n, oracle::complete(n));
}

}  // namespace

TEST_CASE("entropy lower bound closed forms") {
  std::vector<std::pair<NodeId, NodeId>> cyc;
  for (NodeId i = 0; i < 6; ++i) cyc.emplace_back(i, static_cast<NodeId>((i + 1) % 6));
  CHECK(entropy_lower_bound(oracle::uniform_over(6, cyc), 2).lower_bound == 1.0);

  // 64-regular: H_3 = log3 64, bound = log4 64 - 1 = 2.
  const auto b = entropy_lower_bound(regular_uniform(200, 64), 3);
  CHECK(b.hy_given_x == doctest::Approx(std::log(64.0) / std::log(3.0)).epsilon(1e-12));
  CHECK(b.lower_bound == doctest::Approx(2.0).epsilon(1e-12));

  // Complete uniform n = 27: log4 26 - 1.
  CHECK(entropy_lower_bound(complete_uniform(27), 3).lower_bound ==
        doctest::Approx(std::log(26.0) / std::log(4.0) - 1).epsilon(1e-12));
  CHECK_THROWS_AS(entropy_lower_bound(complete_uniform(3), 1), Error);
}

TEST_CASE("brute force known optima") {
  const auto c4 = oracle::uniform_symmetric(4, oracle::cycle(4));
  const auto r1 = brute_force_bnd(c4, 2);
  CHECK(r1.optimum == doctest::Approx(1.0));
  CHECK(r1.witness.edges() == HostNetwork::from_edges(4, oracle::cycle(4)).edges());

  const auto k5 = complete_uniform(5);
  const auto r2 = brute_force_bnd(k5, 2);
  CHECK(r2.optimum == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(r2.witness.edge_count() == 5);
  for (NodeId v = 0; v < 5; ++v) CHECK(r2.witness.degree(v) == 2);

  std::vector<std::pair<NodeId, NodeId>> star;
  for (NodeId v = 1; v < 5; ++v) star.emplace_back(0, v);
  CHECK(brute_force_bnd(oracle::uniform_over(5, star), 4).optimum == doctest::Approx(1.0));

  // Degree 1 cannot serve a path demand of three nodes.
  const auto p3 = oracle::uniform_symmetric(3, oracle::path(3));
  CHECK(std::isinf(brute_force_bnd(p3, 1).optimum));
}

TEST_CASE("brute force limits") {
  CHECK_THROWS_AS(brute_force_bnd(complete_uniform(8), 3), Error);
  CHECK_THROWS_AS(brute_force_bnd(complete_uniform(11), 3, 12), Error);
  CHECK_THROWS_AS(brute_force_bnd(complete_uniform(4), 0), Error);
}

TEST_CASE("brute force matches subset enumeration and dominates the bound") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 3 + rng.below(3);
    const auto d = oracle::random_demand(rng, n, 0.5);
    for (std::size_t delta : {2, 3}) {
      const auto r = brute_force_bnd(d, delta);
      CHECK(r.optimum == doctest::Approx(oracle::bnd_by_subsets(d, delta)).epsilon(1e-12));
      CHECK(epl(d, r.witness) == doctest::Approx(r.optimum).epsilon(1e-12));
      CHECK(degree_stats(r.witness).max_degree <= delta);
      CHECK(entropy_lower_bound(d, delta).lower_bound <= r.optimum + 1e-9);
    }
  }
}

TEST_CASE("exhaustive prefix code") {
  CHECK(exhaustive_prefix_code(Distribution::from_probabilities({0.4, 0.3, 0.2, 0.1}), 2) ==
        doctest::Approx(1.9));
  CHECK(exhaustive_prefix_code(Distribution::from_probabilities({0.25, 0.25, 0.25, 0.25}), 2) ==
        doctest::Approx(2.0));
  CHECK(exhaustive_prefix_code(Distribution::from_probabilities({1.0 / 3, 1.0 / 3, 1.0 / 3}), 3) ==
        doctest::Approx(1.0));
  CHECK(exhaustive_prefix_code(Distribution::from_probabilities({1.0}), 2) == 0.0);

  SplitMix64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 1 + rng.below(6);
    std::vector<double> w(k);
    for (auto& x : w) x = 0.01 + rng.uniform();
    const auto d = Distribution::normalized(w);
    for (std::size_t delta : {2, 3}) {
      CHECK(exhaustive_prefix_code(d, delta) ==
            doctest::Approx(oracle::prefix_code_by_lengths(d.probs(), delta)).epsilon(1e-12));
    }
  }
  std::vector<double> nine(9, 1.0 / 9);
  CHECK_THROWS_AS(exhaustive_prefix_code(Distribution::from_probabilities(nine), 2), Error);
}
