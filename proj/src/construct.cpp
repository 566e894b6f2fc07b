#include "danforge/construct.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "danforge/error.hpp"
#include "danforge/parallel.hpp"
#include "danforge/trees.hpp"

namespace danforge {

namespace {

void finish_report(BuildReport& report, const Demand& demand, std::vector<Edge> edges) {
  report.network = HostNetwork::from_edges(demand.node_count(), edges);
  report.max_degree = degree_stats(report.network).max_degree;
  report.epl = epl(demand, report.network);
  report.h_xy = conditional_entropy(demand, Conditioning::x_given_y, 2.0);
  report.h_yx = conditional_entropy(demand, Conditioning::y_given_x, 2.0);
  report.entropy_bound = report.h_xy + report.h_yx;
  report.ratio = report.epl / (report.entropy_bound + 2.0);
}

// Hangs a near-optimal binary tree over `targets` (weighted by `weights`)
// off `anchor` and appends its edges.
void hang_tree(NodeId anchor, const std::vector<NodeId>& targets, std::vector<double> weights,
               std::vector<Edge>& out) {
  if (targets.empty()) return;
  const auto tree = near_optimal_tree(Distribution::normalized(std::move(weights)), 2);
  out.emplace_back(anchor, targets[tree.root_item()]);
  for (const auto& [a, b] : tree.item_edges()) out.emplace_back(targets[a], targets[b]);
}

// Node ids ordered by (degree, id); the first floor(n/2) are the low half.
std::vector<char> low_half(const std::vector<std::size_t>& degree) {
  std::vector<NodeId> order(degree.size());
  std::iota(order.begin(), order.end(), NodeId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](NodeId a, NodeId b) { return degree[a] < degree[b]; });
  std::vector<char> low(degree.size(), 0);
  for (std::size_t k = 0; k < degree.size() / 2; ++k) low[order[k]] = 1;
  return low;
}

// Round-robin over low nodes in id order, at most `cap` assignments each.
class HelperPool {
 public:
  HelperPool(const std::vector<char>& low, std::size_t cap) : cap_(cap) {
    for (NodeId v = 0; v < low.size(); ++v) {
      if (low[v]) nodes_.push_back(v);
    }
    load_.assign(nodes_.size(), 0);
  }

  bool empty() const { return nodes_.empty(); }
  bool over_capacity() const { return over_; }

  NodeId next() {
    for (std::size_t tries = 0; tries < nodes_.size(); ++tries) {
      const std::size_t k = cursor_;
      cursor_ = (cursor_ + 1) % nodes_.size();
      if (load_[k] < cap_) {
        ++load_[k];
        return nodes_[k];
      }
    }
    // Every helper is full: keep cycling and flag the overflow.
    over_ = true;
    const std::size_t k = cursor_;
    cursor_ = (cursor_ + 1) % nodes_.size();
    ++load_[k];
    return nodes_[k];
  }

 private:
  std::vector<NodeId> nodes_;
  std::vector<std::size_t> load_;
  std::size_t cap_;
  std::size_t cursor_ = 0;
  bool over_ = false;
};

std::size_t ceil_size(double x) { return static_cast<std::size_t>(std::ceil(x - 1e-12)); }

Hops ceil_log2(std::size_t x) {
  Hops bits = 0;
  while ((std::size_t{1} << bits) < x) ++bits;
  return bits;
}

}  // namespace

BuildReport build_tree_dan(const Demand& demand, TreeRoot root_choice) {
  if (!classify(demand).is_tree) {
    throw Error(ErrorCode::WrongFamily, "demand support is not a tree");
  }
  const std::size_t n = demand.node_count();
  const auto support = HostNetwork::support_of(demand);

  // Parent array from node 0, used both for the centroid and as the final
  // rooting when node 0 is requested.
  auto orient = [&](NodeId root) {
    std::vector<NodeId> parent(n, root), order{root};
    std::vector<char> seen(n, 0);
    seen[root] = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (NodeId w : support.neighbors(order[k])) {
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[k];
          order.push_back(w);
        }
      }
    }
    return std::pair{parent, order};
  };

  NodeId root = 0;
  if (root_choice == TreeRoot::centroid) {
    const auto m = marginals(demand);
    const auto [parent, order] = orient(0);
    std::vector<double> subtree(n);
    for (NodeId v = 0; v < n; ++v) subtree[v] = 0.5 * (m.src[v] + m.dst[v]);
    for (std::size_t k = order.size(); k-- > 1;) subtree[parent[order[k]]] += subtree[order[k]];
    std::vector<double> heaviest(n, 0.0);
    for (std::size_t k = 1; k < order.size(); ++k) {
      const NodeId v = order[k];
      heaviest[parent[v]] = std::max(heaviest[parent[v]], subtree[v]);
    }
    double best = 2.0;
    for (NodeId v = 0; v < n; ++v) {
      const double worst = std::max(heaviest[v], subtree[0] - subtree[v]);
      if (worst < best - 1e-15) {
        best = worst;
        root = v;
      }
    }
  }
  const auto parent = orient(root).first;

  std::vector<std::vector<NodeId>> children(n);
  for (NodeId v = 0; v < n; ++v) {
    if (v != root) children[parent[v]].push_back(v);
  }

  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    // Phase 1: demand from i to its children; phase 2: from children to i.
    for (const bool outgoing : {true, false}) {
      std::vector<NodeId> targets;
      std::vector<double> weights;
      for (NodeId c : children[i]) {
        const double p = outgoing ? demand.probability(i, c) : demand.probability(c, i);
        if (p > 0.0) {
          targets.push_back(c);
          weights.push_back(p);
        }
      }
      hang_tree(i, targets, std::move(weights), edges);
    }
  }

  BuildReport report;
  report.algo = "tree";
  report.degree_bound = 8;
  report.avg_degree = classify(demand).avg_degree;
  finish_report(report, demand, std::move(edges));
  return report;
}

BuildReport build_sparse_dan(const Demand& demand) {
  const std::size_t n = demand.node_count();
  std::vector<std::size_t> degree(n);
  for (NodeId v = 0; v < n; ++v) degree[v] = demand.out_degree(v) + demand.in_degree(v);
  const double avg = 2.0 * static_cast<double>(demand.support_size()) / static_cast<double>(n);
  const std::size_t cap = std::max<std::size_t>(1, ceil_size(avg));
  const auto low = low_half(degree);

  std::vector<char> high_out(n), high_in(n);
  for (NodeId v = 0; v < n; ++v) {
    high_out[v] = static_cast<double>(demand.out_degree(v)) > 2.0 * avg;
    high_in[v] = static_cast<double>(demand.in_degree(v)) > 2.0 * avg;
  }

  // Modified weight matrix: subdivided pairs move their mass onto the two
  // halves of the detour through the helper.
  std::map<std::pair<NodeId, NodeId>, double> modified;
  HelperPool pool(low, cap);
  BuildReport report;
  for (const auto& e : demand.entries()) {
    if (high_out[e.src] && high_in[e.dst] && !pool.empty()) {
      const NodeId helper = pool.next();
      report.helpers.push_back({helper, e.src, e.dst});
      modified[{e.src, helper}] += e.p;
      modified[{helper, e.dst}] += e.p;
    } else {
      modified[{e.src, e.dst}] += e.p;
    }
  }
  if (pool.over_capacity()) {
    report.warnings.push_back("helper capacity exhausted; some helpers exceed ceil(avg degree)");
  }

  std::vector<std::vector<std::pair<NodeId, double>>> rows(n), cols(n);
  std::vector<Edge> edges;
  for (const auto& [key, w] : modified) {
    const auto [a, b] = key;
    if (high_out[a]) rows[a].emplace_back(b, w);
    if (high_in[b]) cols[b].emplace_back(a, w);
    if (!high_out[a] && !high_in[b]) edges.emplace_back(a, b);
  }
  for (NodeId v = 0; v < n; ++v) {
    for (auto* list : {&rows[v], &cols[v]}) {
      std::vector<NodeId> targets;
      std::vector<double> weights;
      for (const auto& [t, w] : *list) {
        targets.push_back(t);
        weights.push_back(w);
      }
      hang_tree(v, targets, std::move(weights), edges);
    }
  }

  report.algo = "sparse";
  report.avg_degree = avg;
  report.degree_bound = 12 * cap;
  finish_report(report, demand, std::move(edges));
  return report;
}

ReducedGraph reduce_degree(const HostNetwork& graph) {
  const std::size_t n = graph.node_count();
  if (n < 2) throw Error(ErrorCode::ShapeMismatch, "degree reduction needs at least 2 nodes");
  std::vector<std::size_t> degree(n);
  for (NodeId v = 0; v < n; ++v) degree[v] = graph.degree(v);
  const auto stats = degree_stats(graph);

  DegreeCertificate cert;
  cert.avg_degree = stats.avg_degree;
  cert.input_max_degree = stats.max_degree;
  const std::size_t cap = std::max<std::size_t>(1, ceil_size(stats.avg_degree));
  cert.degree_bound = 8 * cap;
  cert.stretch_bound = 2 * std::max<Hops>(1, ceil_log2(stats.max_degree));

  const auto low = low_half(degree);
  std::vector<char> high(n, 0);
  for (NodeId v = 0; v < n; ++v) {
    high[v] = static_cast<double>(degree[v]) > 2.0 * stats.avg_degree;
    if (high[v]) cert.high_nodes.push_back(v);
  }

  // Phase 1: subdivide edges between two high nodes.
  const auto input_edges = graph.edges();
  std::vector<std::vector<NodeId>> adj(n);
  HelperPool pool(low, cap);
  for (const auto& e : input_edges) {
    if (high[e.u] && high[e.v]) {
      const NodeId helper = pool.next();
      cert.helpers.push_back({helper, e.u, e.v});
      for (NodeId end : {e.u, e.v}) {
        adj[end].push_back(helper);
        adj[helper].push_back(end);
      }
    } else {
      adj[e.u].push_back(e.v);
      adj[e.v].push_back(e.u);
    }
  }
  cert.helpers_over_capacity = pool.over_capacity();
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  // Phase 2: each high node reaches its (now non-high) neighbourhood through
  // a balanced binary tree rooted at itself. Trees of different high nodes
  // share no high node, so they can be laid out independently.
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    if (high[u]) {
      std::vector<std::size_t> items{u};
      items.insert(items.end(), adj[u].begin(), adj[u].end());
      for (const auto& [a, b] : balanced_tree(items, 2).item_edges()) {
        edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
      }
    } else {
      for (NodeId w : adj[u]) {
        if (u < w && !high[w]) edges.emplace_back(u, w);
      }
    }
  }
  ReducedGraph out{HostNetwork::from_edges(n, edges), std::move(cert)};

  auto& c = out.certificate;
  c.stretch.resize(input_edges.size());
  std::vector<NodeId> sources;
  for (const auto& e : input_edges) {
    if (sources.empty() || sources.back() != e.u) sources.push_back(e.u);
  }
  std::vector<std::size_t> first(sources.size());
  for (std::size_t k = 0, s = 0; k < input_edges.size(); ++k) {
    if (k == 0 || input_edges[k].u != input_edges[k - 1].u) first[s++] = k;
  }
  parallel_for(sources.size(), [&](std::size_t s) {
    const auto dist = bfs_distances_bounded(out.graph, sources[s], c.stretch_bound);
    for (std::size_t k = first[s]; k < input_edges.size() && input_edges[k].u == sources[s]; ++k) {
      c.stretch[k] = {input_edges[k], dist[input_edges[k].v]};
    }
  });
  c.max_stretch = 0;
  for (const auto& s : c.stretch) c.max_stretch = std::max(c.max_stretch, s.distance);
  return out;
}

BuildReport spanner_to_dan(const Demand& demand, const HostNetwork& spanner) {
  if (demand.node_count() != spanner.node_count()) {
    throw Error(ErrorCode::ShapeMismatch, "spanner and demand node counts differ");
  }
  BuildReport report;
  const auto cls = classify(demand);
  if (!cls.regular || !cls.uniform) {
    report.warnings.push_back("demand is not regular and uniform; the EPL guarantee does not apply");
  }
  auto reduced = reduce_degree(spanner);
  if (reduced.certificate.helpers_over_capacity) {
    report.warnings.push_back("helper capacity exhausted during degree reduction");
  }
  report.algo = "spanner2dan";
  report.degree_bound = reduced.certificate.degree_bound;
  report.avg_degree = reduced.certificate.avg_degree;
  report.helpers = reduced.certificate.helpers;
  report.spanner_epl = epl(demand, spanner);
  std::vector<Edge> edges = reduced.graph.edges();
  report.certificate = std::move(reduced.certificate);
  finish_report(report, demand, std::move(edges));
  return report;
}

BuildReport build_dary_dan(const Demand& demand, std::size_t arity) {
  if (arity < 2) throw Error(ErrorCode::BadArity, "tree arity must be >= 2");
  std::vector<Edge> edges;
  for (NodeId k = 1; k < demand.node_count(); ++k) {
    edges.emplace_back(static_cast<NodeId>((k - 1) / arity), k);
  }
  BuildReport report;
  report.algo = "dary";
  report.degree_bound = arity + 1;
  report.avg_degree = classify(demand).avg_degree;
  finish_report(report, demand, std::move(edges));
  return report;
}

}  // namespace danforge
