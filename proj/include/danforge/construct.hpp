#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "danforge/demand.hpp"
#include "danforge/netgraph.hpp"

namespace danforge {

// A low-degree node that subdivides the (directed or undirected) pair
// src -> dst: the pair is routed src - helper - dst.
struct HelperAssignment {
  NodeId helper = 0;
  NodeId src = 0;
  NodeId dst = 0;
};

struct EdgeStretch {
  Edge edge;
  Hops distance = 0;  // kUnreachable when longer than the certificate bound
};

struct DegreeCertificate {
  double avg_degree = 0.0;       // of the input graph
  std::size_t input_max_degree = 0;
  std::size_t degree_bound = 0;  // 8 * ceil(avg_degree)
  Hops stretch_bound = 0;        // 2 * max(1, ceil(log2 input_max_degree))
  Hops max_stretch = 0;
  bool helpers_over_capacity = false;
  std::vector<NodeId> high_nodes;
  std::vector<HelperAssignment> helpers;
  std::vector<EdgeStretch> stretch;  // one per input edge, in edge order

  bool holds(std::size_t output_max_degree) const {
    return output_max_degree <= degree_bound && max_stretch <= stretch_bound;
  }
};

struct ReducedGraph {
  HostNetwork graph;
  DegreeCertificate certificate;
};

struct BuildReport {
  std::string algo;
  HostNetwork network;
  std::size_t max_degree = 0;
  std::size_t degree_bound = 0;  // what the construction guarantees; 0 if none
  double epl = 0.0;
  double h_xy = 0.0;             // H(X|Y), base 2
  double h_yx = 0.0;             // H(Y|X), base 2
  double entropy_bound = 0.0;    // h_xy + h_yx
  double ratio = 0.0;            // epl / (entropy_bound + 2)
  double avg_degree = 0.0;       // the average degree the degree bound is based on
  std::vector<HelperAssignment> helpers;
  std::vector<std::string> warnings;
  std::optional<DegreeCertificate> certificate;  // spanner pipeline only
  std::optional<double> spanner_epl;             // spanner pipeline only
};

enum class TreeRoot { centroid, node_zero };

// Demand whose undirected support is a tree. Each node's demand to its
// children is served by a near-optimal binary tree hanging off the node, and
// likewise for demand from its children. Max degree <= 8. Throws WrongFamily
// when the support is not a tree.
BuildReport build_tree_dan(const Demand& demand, TreeRoot root = TreeRoot::centroid);

// Any demand. Pairs from a high out-degree node to a high in-degree node are
// subdivided through low-degree helpers; every high out-degree node then
// reaches its (modified) row through a binary tree, and every high in-degree
// node its column. Degrees count in + out arcs of the demand graph, and the
// max degree is <= 12 * ceil(average degree).
BuildReport build_sparse_dan(const Demand& demand);

// Max degree <= 8 * ceil(avg degree) and every input edge stretched to at
// most 2 * ceil(log2 max degree) hops. Requires at least 2 nodes.
ReducedGraph reduce_degree(const HostNetwork& graph);

// Degree reduction applied to a spanner of the demand. Meant for regular and
// uniform demands; other demands get a warning in the report.
BuildReport spanner_to_dan(const Demand& demand, const HostNetwork& spanner);

// Complete arity-ary tree over all nodes in id order (node k's parent is
// (k - 1) / arity). Throws BadArity when arity < 2.
BuildReport build_dary_dan(const Demand& demand, std::size_t arity);

}  // namespace danforge
