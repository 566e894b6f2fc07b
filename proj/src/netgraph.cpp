#include "danforge/netgraph.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "danforge/error.hpp"
#include "danforge/parallel.hpp"

namespace danforge {

HostNetwork HostNetwork::from_edges(std::size_t n, std::span<const Edge> edges) {
  HostNetwork g(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::ShapeMismatch, "edge (" + std::to_string(e.u) + "," +
                                                std::to_string(e.v) + ") outside node range " +
                                                std::to_string(n));
    }
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(e.u));
    g.adjacency_[e.u].push_back(e.v);
    g.adjacency_[e.v].push_back(e.u);
  }
  std::size_t twice = 0;
  for (auto& list : g.adjacency_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    twice += list.size();
  }
  g.edge_count_ = twice / 2;
  return g;
}

HostNetwork HostNetwork::support_of(const Demand& demand) {
  std::vector<Edge> edges;
  edges.reserve(demand.support_size());
  for (const auto& e : demand.entries()) edges.emplace_back(e.src, e.dst);
  return from_edges(demand.node_count(), edges);
}

bool HostNetwork::has_edge(NodeId a, NodeId b) const {
  const auto& list = adjacency_[a];
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<Edge> HostNetwork::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeId u = 0; u < adjacency_.size(); ++u) {
    for (NodeId v : adjacency_[u]) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<Hops> bfs_distances_bounded(const HostNetwork& graph, NodeId src, Hops max_depth) {
  std::vector<Hops> dist(graph.node_count(), kUnreachable);
  std::vector<NodeId> frontier{src};
  std::vector<NodeId> next;
  dist[src] = 0;
  for (Hops depth = 0; !frontier.empty() && depth < max_depth; ++depth) {
    next.clear();
    for (NodeId u : frontier) {
      for (NodeId w : graph.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = depth + 1;
          next.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

std::vector<Hops> bfs_distances(const HostNetwork& graph, NodeId src) {
  return bfs_distances_bounded(graph, src, kUnreachable);
}

namespace {

void check_shape(const Demand& demand, const HostNetwork& graph) {
  if (demand.node_count() != graph.node_count()) {
    throw Error(ErrorCode::ShapeMismatch,
                "demand has " + std::to_string(demand.node_count()) + " nodes, graph has " +
                    std::to_string(graph.node_count()));
  }
}

}  // namespace

double epl(const Demand& demand, const HostNetwork& graph) {
  check_shape(demand, graph);
  const std::size_t n = demand.node_count();
  std::vector<NodeId> sources;
  for (NodeId v = 0; v < n; ++v) {
    if (!demand.row(v).empty()) sources.push_back(v);
  }
  std::vector<double> partial(sources.size(), 0.0);
  parallel_for(sources.size(), [&](std::size_t k) {
    const auto dist = bfs_distances(graph, sources[k]);
    double s = 0.0;
    for (const auto& e : demand.row(sources[k])) {
      if (dist[e.dst] == kUnreachable) {
        s = std::numeric_limits<double>::infinity();
        break;
      }
      s += e.p * static_cast<double>(dist[e.dst]);
    }
    partial[k] = s;
  });
  return pairwise_sum(partial);
}

DegreeStats degree_stats(const HostNetwork& graph) {
  DegreeStats s;
  if (graph.node_count() == 0) return s;
  std::size_t total = 0;
  for (NodeId v = 0; v < graph.node_count(); ++v) {
    s.max_degree = std::max(s.max_degree, graph.degree(v));
    total += graph.degree(v);
  }
  s.avg_degree = static_cast<double>(total) / static_cast<double>(graph.node_count());
  return s;
}

namespace {

// Per-pair spanner distances, grouped by the smaller endpoint so each BFS
// serves every pair that starts there.
std::vector<Hops> pair_distances(std::span<const Edge> pairs, const HostNetwork& spanner) {
  std::vector<std::size_t> order(pairs.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].u < pairs[b].u;
  });
  std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end) in order
  for (std::size_t k = 0; k < order.size();) {
    std::size_t j = k;
    while (j < order.size() && pairs[order[j]].u == pairs[order[k]].u) ++j;
    groups.emplace_back(k, j);
    k = j;
  }
  std::vector<Hops> out(pairs.size(), kUnreachable);
  const std::size_t n = spanner.node_count();
  parallel_for(groups.size(), [&](std::size_t g) {
    const auto [begin, end] = groups[g];
    // The BFS stops at the first level where every target of this source is
    // settled, so the buffer is reset through the touched list only.
    thread_local std::vector<Hops> dist;
    thread_local std::vector<NodeId> touched;
    if (dist.size() < n) dist.assign(n, kUnreachable);
    auto settled = [&] {
      for (std::size_t k = begin; k < end; ++k) {
        if (dist[pairs[order[k]].v] == kUnreachable) return false;
      }
      return true;
    };
    const NodeId src = pairs[order[begin]].u;
    touched.assign(1, src);
    dist[src] = 0;
    std::size_t level_begin = 0;
    while (level_begin < touched.size() && !settled()) {
      const std::size_t level_end = touched.size();
      for (std::size_t q = level_begin; q < level_end; ++q) {
        const NodeId x = touched[q];
        for (NodeId y : spanner.neighbors(x)) {
          if (dist[y] != kUnreachable) continue;
          dist[y] = dist[x] + 1;
          touched.push_back(y);
        }
      }
      level_begin = level_end;
    }
    for (std::size_t k = begin; k < end; ++k) out[order[k]] = dist[pairs[order[k]].v];
    for (NodeId x : touched) dist[x] = kUnreachable;
  });
  return out;
}

}  // namespace

double neighborhood_distortion(std::span<const Edge> demanded, const HostNetwork& spanner) {
  if (demanded.empty()) return 1.0;
  for (const auto& e : demanded) {
    if (e.u >= spanner.node_count() || e.v >= spanner.node_count()) {
      throw Error(ErrorCode::ShapeMismatch, "demanded pair outside spanner node range");
    }
  }
  const auto dist = pair_distances(demanded, spanner);
  std::vector<double> terms(dist.size());
  for (std::size_t k = 0; k < dist.size(); ++k) {
    if (dist[k] == kUnreachable) return std::numeric_limits<double>::infinity();
    terms[k] = static_cast<double>(dist[k]);
  }
  return pairwise_sum(terms) / static_cast<double>(terms.size());
}

double neighborhood_distortion(const Demand& demand, const HostNetwork& spanner) {
  check_shape(demand, spanner);
  std::vector<Edge> pairs;
  pairs.reserve(demand.support_size());
  for (const auto& e : demand.entries()) pairs.emplace_back(e.src, e.dst);
  return neighborhood_distortion(pairs, spanner);
}

double neighborhood_distortion(const HostNetwork& graph, const HostNetwork& spanner) {
  if (graph.node_count() != spanner.node_count()) {
    throw Error(ErrorCode::ShapeMismatch, "graph and spanner node counts differ");
  }
  const auto edges = graph.edges();
  return neighborhood_distortion(edges, spanner);
}

double all_pairs_distortion(const HostNetwork& graph, const HostNetwork& spanner) {
  const std::size_t n = graph.node_count();
  if (n != spanner.node_count()) {
    throw Error(ErrorCode::ShapeMismatch, "graph and spanner node counts differ");
  }
  if (n < 2) return 1.0;
  std::vector<double> partial(n, 0.0);
  std::vector<char> disconnected(n, 0);
  parallel_for(n, [&](std::size_t s) {
    const auto dg = bfs_distances(graph, static_cast<NodeId>(s));
    const auto ds = bfs_distances(spanner, static_cast<NodeId>(s));
    double sum = 0.0;
    for (std::size_t t = s + 1; t < n; ++t) {
      if (dg[t] == kUnreachable) {
        disconnected[s] = 1;
        return;
      }
      sum += ds[t] == kUnreachable ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(ds[t]) / static_cast<double>(dg[t]);
    }
    partial[s] = sum;
  });
  if (std::any_of(disconnected.begin(), disconnected.end(), [](char c) { return c != 0; })) {
    throw Error(ErrorCode::NotConnected, "all-pairs distortion needs a connected graph");
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return pairwise_sum(partial) / pairs;
}

DistortionReport measure_distortion(const HostNetwork& graph, const HostNetwork& spanner,
                                    bool with_apd) {
  DistortionReport r;
  const auto edges = graph.edges();
  if (!edges.empty()) {
    const auto dist = pair_distances(edges, spanner);
    std::vector<double> terms(dist.size());
    Hops worst = 0;
    bool broken = false;
    for (std::size_t k = 0; k < dist.size(); ++k) {
      if (dist[k] == kUnreachable) {
        broken = true;
        break;
      }
      terms[k] = static_cast<double>(dist[k]);
      worst = std::max(worst, dist[k]);
    }
    if (broken) {
      r.nd = r.max_demand_distortion = std::numeric_limits<double>::infinity();
    } else {
      r.nd = pairwise_sum(terms) / static_cast<double>(terms.size());
      r.max_demand_distortion = static_cast<double>(worst);
    }
  }
  r.apd = with_apd ? all_pairs_distortion(graph, spanner)
                   : std::numeric_limits<double>::quiet_NaN();
  return r;
}

}  // namespace danforge
