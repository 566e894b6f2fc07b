#pragma once

#include <cstddef>
#include <cstdint>

#include "danforge/demand.hpp"
#include "danforge/netgraph.hpp"

namespace danforge {

struct BoundReport {
  std::size_t delta = 2;
  double hx_given_y = 0.0;  // base delta
  double hy_given_x = 0.0;  // base delta
  double raw = 0.0;         // max of the two conditional entropies
  double lower_bound = 1.0;
};

struct OracleResult {
  double optimum = 0.0;
  HostNetwork witness;
  std::uint64_t searched = 0;
};

// Any network of maximum degree delta has EPL at least
//   max(H(Y|X), H(X|Y)) / log_delta(delta + 1) - 1   (entropies base delta),
// since the BFS tree from each source is a delta-ary tree. The value is
// clamped at 1: a demanded pair of distinct nodes costs at least one hop.
BoundReport entropy_lower_bound(const Demand& demand, std::size_t delta);

// Exact minimum EPL over all simple graphs on n <= n_max nodes with maximum
// degree <= delta. Ties keep the lexicographically smallest edge list.
// optimum is infinity when no such graph connects every demanded pair.
OracleResult brute_force_bnd(const Demand& demand, std::size_t delta, std::size_t n_max = 7);

// Optimal expected depth of a delta-ary prefix code over the positive
// entries of d, by enumerating code-length vectors that satisfy the Kraft
// inequality sum delta^-l_i <= 1.
double exhaustive_prefix_code(const Distribution& d, std::size_t delta, std::size_t k_max = 8);

}  // namespace danforge
