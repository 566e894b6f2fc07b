#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "danforge/demand.hpp"
#include "danforge/netgraph.hpp"

namespace danforge {

enum class Family {
  tree,
  sparse_random,
  hypercube,
  regular_uniform,
  complete_uniform,
  thick_grid,
  clique_lines,
  star_of_cliques,
  product,
};

std::string_view to_string(Family family);
// Throws BadSpec on an unknown name.
Family family_from_string(std::string_view name);

struct GenSpec {
  Family family = Family::tree;
  std::size_t n = 0;          // node count (not used by hypercube / thick_grid)
  std::size_t d = 0;          // hypercube dimension
  std::size_t rows = 0;       // thick_grid
  std::size_t cols = 0;       // thick_grid
  std::size_t radius = 1;     // thick_grid: L-infinity neighbourhood radius
  std::size_t r = 0;          // regular_uniform degree
  std::size_t m = 0;          // sparse_random arc count (0 -> 3n)
  std::uint64_t seed = 0;
  // Zipf exponent for entry weights; families named *_uniform ignore it.
  double skew = 0.0;
  // sparse_random only: Zipf exponent for endpoint popularity, which
  // produces hubs when positive.
  double hub_skew = 0.0;
};

struct Generated {
  Demand demand;
  HostNetwork support;  // undirected support of the demand
};

// Same spec -> identical demand. Every family emits both directions of each
// support edge, except tree and sparse_random which draw directions at
// random. Throws BadSpec on invalid parameters.
Generated generate(const GenSpec& spec);

// Companion spanners for the distortion-divergence families:
// clique_lines: the clique is replaced by a balanced binary tree over the
//   clique nodes, the lines are kept.
// star_of_cliques: every clique becomes a star around the node that touches
//   the hub, and the central star becomes a balanced tree of arity
//   ceil(log2 n) over hub + star nodes (auxiliary edges).
HostNetwork divergence_spanner(const GenSpec& spec);

}  // namespace danforge
