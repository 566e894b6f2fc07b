#pragma once

#include <cstddef>
#include <vector>

#include "danforge/netgraph.hpp"

namespace danforge {

// 2-net of a graph with the 2-layered star clusters around each net node.
struct Clustering {
  std::vector<NodeId> net_nodes;      // in pick order
  std::vector<NodeId> head;           // node -> its cluster head
  std::vector<Edge> intra_edges;      // node -> BFS parent towards its head
  std::vector<Edge> inter_edges;      // one edge per communicating cluster pair
};

enum class SpannerVariant { subgraph, metric };

struct SpannerResult {
  HostNetwork spanner;
  std::size_t edge_count = 0;
  DistortionReport distortion;
  SpannerVariant variant = SpannerVariant::subgraph;
  // Largest number of inter-cluster edges touching one cluster (LDD only).
  std::size_t max_cluster_links = 0;
  std::size_t cluster_count = 0;
};

// APD is measured only up to this many nodes (it needs all-pairs BFS) and only
// on connected hosts; otherwise it is NaN.
inline constexpr std::size_t kApdNodeLimit = 2000;

// Greedy 2-net: repeatedly pick the node of largest degree in the residual
// graph (ties to the lowest id) and delete its 2-hop ball. Every other node
// joins a nearest net node; ties go to the lowest head id.
Clustering build_2net(const HostNetwork& graph);

// Cluster spanner for graphs of locally bounded doubling dimension.
// subgraph: intra-cluster stars plus the lexicographically smallest graph
//   edge between every pair of clusters that share one (stretch <= 9).
// metric: intra-cluster stars plus a head-to-head edge for every such pair
//   (stretch <= 5; head-to-head edges may be absent from the graph).
SpannerResult build_ldd_spanner(const HostNetwork& graph, SpannerVariant variant);

// Edges in lexicographic order; an edge is kept iff the spanner built so far
// has no path of length <= t between its endpoints.
SpannerResult greedy_spanner(const HostNetwork& graph, std::size_t t);

// The d-dimensional hypercube (node ids are bit vectors).
HostNetwork hypercube_graph(std::size_t d);

// Linear-size 3-spanner of the d-cube. The coordinates are split into a
// low and a high group, each with a Hamming-code dominating set; edges of
// one group are kept in full only where the other group's coordinates
// dominate, plus one edge from every vertex towards each dominator. Falls
// back to greedy_spanner(Q_d, 3) if any cube edge is stretched beyond 3.
SpannerResult hypercube_spanner(std::size_t d);

// Upper estimate of the local doubling constant: for every node u, the size
// of a greedy cover of B(u, 2) by unit balls; the maximum over u.
std::size_t local_doubling_estimate(const HostNetwork& graph);

}  // namespace danforge
