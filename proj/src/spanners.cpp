#include "danforge/spanners.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>
#include <tuple>
#include <utility>

#include "danforge/error.hpp"
#include "danforge/parallel.hpp"

namespace danforge {

namespace {

SpannerResult finish(const HostNetwork& graph, std::vector<Edge> edges, SpannerVariant variant) {
  SpannerResult r;
  r.spanner = HostNetwork::from_edges(graph.node_count(), edges);
  r.edge_count = r.spanner.edge_count();
  r.variant = variant;
  bool with_apd = graph.node_count() <= kApdNodeLimit && graph.node_count() >= 2;
  if (with_apd) {
    const auto reach = bfs_distances(graph, 0);
    with_apd = std::none_of(reach.begin(), reach.end(), [](Hops h) { return h == kUnreachable; });
  }
  r.distortion = measure_distortion(graph, r.spanner, with_apd);
  return r;
}

}  // namespace

Clustering build_2net(const HostNetwork& graph) {
  const std::size_t n = graph.node_count();
  Clustering c;
  c.head.assign(n, 0);

  std::vector<char> residual(n, 1);
  std::vector<std::size_t> rdeg(n);
  using Key = std::pair<std::size_t, std::int64_t>;  // (residual degree, -id)
  std::priority_queue<Key> heap;
  for (NodeId v = 0; v < n; ++v) {
    rdeg[v] = graph.degree(v);
    heap.emplace(rdeg[v], -static_cast<std::int64_t>(v));
  }
  while (!heap.empty()) {
    const auto [d, neg] = heap.top();
    heap.pop();
    const auto v = static_cast<NodeId>(-neg);
    if (!residual[v] || d != rdeg[v]) continue;
    c.net_nodes.push_back(v);
    const auto dist = bfs_distances_bounded(graph, v, 2);
    for (NodeId x = 0; x < n; ++x) {
      if (dist[x] == kUnreachable || !residual[x]) continue;
      residual[x] = 0;
      for (NodeId y : graph.neighbors(x)) {
        if (residual[y]) heap.emplace(--rdeg[y], -static_cast<std::int64_t>(y));
      }
    }
  }

  // Level-synchronous multi-source BFS; a node reached from several nodes of
  // the previous level keeps the one with the smallest (head, id).
  std::vector<Hops> dist(n, kUnreachable);
  std::vector<NodeId> parent(n);
  std::vector<NodeId> frontier = c.net_nodes;
  std::sort(frontier.begin(), frontier.end());
  for (NodeId h : frontier) {
    dist[h] = 0;
    c.head[h] = h;
    parent[h] = h;
  }
  for (Hops level = 0; !frontier.empty(); ++level) {
    std::vector<NodeId> next;
    for (NodeId u : frontier) {
      for (NodeId w : graph.neighbors(u)) {
        if (dist[w] == kUnreachable) {
          dist[w] = level + 1;
          c.head[w] = c.head[u];
          parent[w] = u;
          next.push_back(w);
        } else if (dist[w] == level + 1 &&
                   std::pair(c.head[u], u) < std::pair(c.head[w], parent[w])) {
          c.head[w] = c.head[u];
          parent[w] = u;
        }
      }
    }
    std::sort(next.begin(), next.end());
    frontier = std::move(next);
  }
  for (NodeId v = 0; v < n; ++v) {
    if (parent[v] != v) c.intra_edges.emplace_back(v, parent[v]);
  }
  std::sort(c.intra_edges.begin(), c.intra_edges.end());

  std::map<std::pair<NodeId, NodeId>, Edge> link;
  for (const auto& e : graph.edges()) {
    const NodeId a = c.head[e.u], b = c.head[e.v];
    if (a != b) link.try_emplace({std::min(a, b), std::max(a, b)}, e);
  }
  for (const auto& [key, e] : link) c.inter_edges.push_back(e);
  return c;
}

SpannerResult build_ldd_spanner(const HostNetwork& graph, SpannerVariant variant) {
  const auto clusters = build_2net(graph);
  std::vector<Edge> edges = clusters.intra_edges;
  std::map<NodeId, std::size_t> links;
  for (const auto& e : clusters.inter_edges) {
    const NodeId a = clusters.head[e.u], b = clusters.head[e.v];
    ++links[a];
    ++links[b];
    if (variant == SpannerVariant::subgraph) {
      edges.push_back(e);
    } else {
      edges.emplace_back(a, b);
    }
  }
  auto r = finish(graph, std::move(edges), variant);
  r.cluster_count = clusters.net_nodes.size();
  for (const auto& [head, count] : links) r.max_cluster_links = std::max(r.max_cluster_links, count);
  return r;
}

SpannerResult greedy_spanner(const HostNetwork& graph, std::size_t t) {
  if (t < 1) throw Error(ErrorCode::BadSpec, "spanner stretch t must be >= 1");
  const std::size_t n = graph.node_count();
  std::vector<std::vector<NodeId>> adj(n);
  std::vector<std::size_t> stamp(n, 0);
  std::size_t clock = 0;
  std::vector<Edge> kept;

  // Bounded BFS from u; true when v is within t hops in the current spanner.
  auto within = [&](NodeId u, NodeId v) {
    ++clock;
    std::vector<NodeId> frontier{u}, next;
    stamp[u] = clock;
    for (std::size_t depth = 0; depth < t && !frontier.empty(); ++depth) {
      next.clear();
      for (NodeId x : frontier) {
        for (NodeId y : adj[x]) {
          if (stamp[y] == clock) continue;
          if (y == v) return true;
          stamp[y] = clock;
          next.push_back(y);
        }
      }
      frontier.swap(next);
    }
    return false;
  };

  for (const auto& e : graph.edges()) {
    if (!within(e.u, e.v)) {
      kept.push_back(e);
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  }
  return finish(graph, std::move(kept), SpannerVariant::subgraph);
}

HostNetwork hypercube_graph(std::size_t d) {
  if (d > 24) throw Error(ErrorCode::TooLarge, "hypercube dimension limited to 24");
  const std::size_t n = std::size_t{1} << d;
  std::vector<Edge> edges;
  edges.reserve(n * d / 2);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t y = x ^ (std::size_t{1} << j);
      if (x < y) edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(y));
    }
  }
  return HostNetwork::from_edges(n, edges);
}

namespace {

// Dominating set of Q_m from the Hamming code on the first 2^k - 1
// coordinates (2^k <= m + 1 < 2^(k+1)); the remaining coordinates are free.
// A vertex is dominated by flipping the bit its syndrome points at.
class CubeDominator {
 public:
  explicit CubeDominator(std::size_t m) {
    while ((std::size_t{2} << code_bits_log_) <= m + 1) ++code_bits_log_;
    code_len_ = (std::size_t{1} << code_bits_log_) - 1;
  }

  std::size_t of(std::size_t y) const {
    std::size_t syndrome = 0;
    for (std::size_t i = 0; i < code_len_; ++i) {
      if ((y >> i) & 1) syndrome ^= i + 1;
    }
    return syndrome == 0 ? y : y ^ (std::size_t{1} << (syndrome - 1));
  }
  bool contains(std::size_t y) const { return of(y) == y; }
  // |D| = 2^m / 2^k.
  std::size_t log_inverse_density() const { return code_bits_log_; }

 private:
  std::size_t code_bits_log_ = 1;
  std::size_t code_len_ = 1;
};

// Edge count of the split Q_d = Q_m x Q_t built by cube_split below.
double split_size(std::size_t m, std::size_t t) {
  const double ny = std::ldexp(1.0, static_cast<int>(m)), nz = std::ldexp(1.0, static_cast<int>(t));
  const double dy = ny / std::ldexp(1.0, static_cast<int>(CubeDominator(m).log_inverse_density()));
  const double dz = nz / std::ldexp(1.0, static_cast<int>(CubeDominator(t).log_inverse_density()));
  const double stars = nz * (ny - dy);
  const double z_rich = dy * nz * static_cast<double>(t) / 2.0;
  const double z_links = (ny - dy) * (nz - dz);
  const double y_rich = dz * (ny * static_cast<double>(m) / 2.0 - (ny - dy));
  return stars + z_rich + z_links + y_rich;
}

// x = y | z << m. Kept: every y-edge to the dominator of y; all z-edges at
// dominating y; the z-edge from every non-dominating copy z to its
// dominator; all y-edges inside dominating copies z. A missing z-edge
// closes a square through dom(y), a missing y-edge one through dom(z).
std::vector<Edge> cube_split(std::size_t m, std::size_t t) {
  const CubeDominator dy(m), dz(t);
  const std::size_t ny = std::size_t{1} << m, nz = std::size_t{1} << t;
  std::vector<Edge> out;
  auto add = [&](std::size_t a, std::size_t b) {
    out.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
  };
  for (std::size_t z = 0; z < nz; ++z) {
    const bool rich_copy = dz.contains(z);
    const std::size_t zdom = dz.of(z);
    for (std::size_t y = 0; y < ny; ++y) {
      const std::size_t x = y | (z << m);
      if (rich_copy) {
        for (std::size_t i = 0; i < m; ++i) {
          const std::size_t y2 = y ^ (std::size_t{1} << i);
          if (y < y2) add(x, y2 | (z << m));
        }
      } else if (!dy.contains(y)) {
        add(x, dy.of(y) | (z << m));
      }
      if (dy.contains(y)) {
        for (std::size_t j = 0; j < t; ++j) {
          const std::size_t z2 = z ^ (std::size_t{1} << j);
          if (z < z2) add(x, y | (z2 << m));
        }
      } else if (!rich_copy) {
        add(x, y | (zdom << m));
      }
    }
  }
  return out;
}

}  // namespace

SpannerResult hypercube_spanner(std::size_t d) {
  if (d < 1) throw Error(ErrorCode::BadSpec, "hypercube dimension must be >= 1");
  if (d > 20) throw Error(ErrorCode::TooLarge, "hypercube spanner limited to dimension 20");
  const auto cube = hypercube_graph(d);
  std::vector<Edge> edges;
  if (d == 1) {
    edges = cube.edges();
  } else {
    std::size_t best_m = 1;
    for (std::size_t m = 2; m < d; ++m) {
      if (split_size(m, d - m) < split_size(best_m, d - best_m)) best_m = m;
    }
    edges = cube_split(best_m, d - best_m);
  }
  auto result = finish(cube, std::move(edges), SpannerVariant::subgraph);
  if (result.distortion.max_demand_distortion > 3.0) return greedy_spanner(cube, 3);
  return result;
}

std::size_t local_doubling_estimate(const HostNetwork& graph) {
  const std::size_t n = graph.node_count();
  std::vector<std::size_t> per_node(n, 0);
  parallel_for(n, [&](std::size_t u) {
    const auto dist = bfs_distances_bounded(graph, static_cast<NodeId>(u), 3);
    std::vector<char> uncovered(n, 0);
    std::size_t left = 0;
    std::vector<NodeId> candidates;
    for (NodeId x = 0; x < n; ++x) {
      if (dist[x] == kUnreachable) continue;
      candidates.push_back(x);
      if (dist[x] <= 2) {
        uncovered[x] = 1;
        ++left;
      }
    }
    std::size_t balls = 0;
    while (left > 0) {
      NodeId best = candidates.front();
      std::size_t best_gain = 0;
      for (NodeId y : candidates) {
        std::size_t gain = uncovered[y] ? 1 : 0;
        for (NodeId z : graph.neighbors(y)) gain += uncovered[z] ? 1 : 0;
        if (gain > best_gain) {
          best_gain = gain;
          best = y;
        }
      }
      uncovered[best] = 0;
      for (NodeId z : graph.neighbors(best)) uncovered[z] = 0;
      left -= best_gain;
      ++balls;
    }
    per_node[u] = balls;
  });
  return n == 0 ? 0 : *std::max_element(per_node.begin(), per_node.end());
}

}  // namespace danforge
