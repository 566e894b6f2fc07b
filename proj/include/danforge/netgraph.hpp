#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "danforge/demand.hpp"
#include "danforge/types.hpp"

namespace danforge {

// Undirected edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Unweighted, undirected simple graph with sorted adjacency lists.
class HostNetwork {
 public:
  HostNetwork() = default;
  explicit HostNetwork(std::size_t n) : adjacency_(n) {}

  // Repeated edges are merged; a self-loop or out-of-range endpoint throws.
  static HostNetwork from_edges(std::size_t n, std::span<const Edge> edges);

  // Undirected support of a demand.
  static HostNetwork support_of(const Demand& demand);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }
  bool has_edge(NodeId a, NodeId b) const;

  // Sorted list of all edges.
  std::vector<Edge> edges() const;

 private:
  std::vector<std::vector<NodeId>> adjacency_;
  std::size_t edge_count_ = 0;
};

struct DegreeStats {
  std::size_t max_degree = 0;
  double avg_degree = 0.0;
};

struct DistortionReport {
  double nd = 1.0;                      // mean spanner distance over demanded pairs
  double apd = 1.0;                     // mean of d_S / d_G over unordered pairs
  double max_demand_distortion = 1.0;   // max spanner distance over demanded pairs
};

std::vector<Hops> bfs_distances(const HostNetwork& graph, NodeId src);

// Like bfs_distances but stops expanding past max_depth; farther nodes stay
// kUnreachable.
std::vector<Hops> bfs_distances_bounded(const HostNetwork& graph, NodeId src, Hops max_depth);

// Sum over the demand support of p(u,v) * d(u,v). Infinity when any demanded
// pair is disconnected. Parallel over sources, reduced in a fixed order.
double epl(const Demand& demand, const HostNetwork& graph);

DegreeStats degree_stats(const HostNetwork& graph);

// Mean spanner distance over the given demanded pairs (each pair at distance
// one in the demand graph). Infinity when a pair is disconnected in `spanner`.
double neighborhood_distortion(std::span<const Edge> demanded, const HostNetwork& spanner);
// Demanded pairs taken as the demand's ordered support, one term per entry.
double neighborhood_distortion(const Demand& demand, const HostNetwork& spanner);
// Demanded pairs taken as the edges of `graph`.
double neighborhood_distortion(const HostNetwork& graph, const HostNetwork& spanner);

// Mean of d_S(u,v) / d_G(u,v) over all unordered pairs; throws NotConnected
// when `graph` is disconnected.
double all_pairs_distortion(const HostNetwork& graph, const HostNetwork& spanner);

// ND plus the maximum demanded-pair stretch; APD is filled only when
// `with_apd` is set (it needs all-pairs BFS).
DistortionReport measure_distortion(const HostNetwork& graph, const HostNetwork& spanner,
                                    bool with_apd);

}  // namespace danforge
