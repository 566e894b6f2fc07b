#include "danforge/bounds.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "danforge/error.hpp"
#include "danforge/parallel.hpp"

namespace danforge {

BoundReport entropy_lower_bound(const Demand& demand, std::size_t delta) {
  if (delta < 2) throw Error(ErrorCode::BadArity, "lower bound needs delta >= 2");
  const double base = static_cast<double>(delta);
  BoundReport r;
  r.delta = delta;
  r.hx_given_y = conditional_entropy(demand, Conditioning::x_given_y, base);
  r.hy_given_x = conditional_entropy(demand, Conditioning::y_given_x, base);
  r.raw = std::max(r.hx_given_y, r.hy_given_x);
  const double scale = std::log(base + 1.0) / std::log(base);
  r.lower_bound = std::max(1.0, r.raw / scale - 1.0);
  return r;
}

namespace {

constexpr std::size_t kMaxOracleNodes = 10;
using EdgeMask = std::uint64_t;

struct Candidate {
  double epl = std::numeric_limits<double>::infinity();
  EdgeMask edges = 0;
  bool found = false;
  std::uint64_t searched = 0;
};

// Sorted edge lists compare lexicographically; with edges indexed in
// lexicographic order that is a comparison of ascending bit sequences.
bool lex_less(EdgeMask a, EdgeMask b) {
  while (a != 0 && b != 0) {
    const int ia = std::countr_zero(a);
    const int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;
}

bool better(const Candidate& x, const Candidate& y) {
  if (!x.found) return false;
  if (!y.found) return true;
  const bool x_inf = std::isinf(x.epl);
  const bool y_inf = std::isinf(y.epl);
  if (x_inf != y_inf) return y_inf;
  if (!x_inf && std::abs(x.epl - y.epl) > 1e-12) return x.epl < y.epl;
  return lex_less(x.edges, y.edges);
}

class BndSearch {
 public:
  BndSearch(const Demand& demand, std::size_t delta) : demand_(demand), delta_(delta) {
    n_ = demand.node_count();
    for (NodeId u = 0; u < n_; ++u) {
      for (NodeId v = u + 1; v < n_; ++v) pairs_.emplace_back(u, v);
    }
  }

  std::size_t edge_slots() const { return pairs_.size(); }

  // Exhausts every completion of a fixed assignment of the first
  // `prefix_len` edges (bit k of `prefix` = edge k included).
  Candidate run(EdgeMask prefix, std::size_t prefix_len) const {
    std::array<std::uint32_t, kMaxOracleNodes> adj{};
    std::array<std::size_t, kMaxOracleNodes> deg{};
    Candidate best;
    for (std::size_t k = 0; k < prefix_len; ++k) {
      if ((prefix >> k) & 1U) {
        const auto& e = pairs_[k];
        if (++deg[e.u] > delta_ || ++deg[e.v] > delta_) return best;
        adj[e.u] |= 1U << e.v;
        adj[e.v] |= 1U << e.u;
      }
    }
    recurse(prefix_len, prefix, adj, deg, best);
    return best;
  }

 private:
  void recurse(std::size_t k, EdgeMask chosen, std::array<std::uint32_t, kMaxOracleNodes>& adj,
               std::array<std::size_t, kMaxOracleNodes>& deg, Candidate& best) const {
    if (k == pairs_.size()) {
      ++best.searched;
      Candidate c;
      c.found = true;
      c.edges = chosen;
      c.epl = evaluate(adj);
      if (better(c, best)) {
        c.searched = best.searched;
        best = c;
      }
      return;
    }
    recurse(k + 1, chosen, adj, deg, best);
    const auto& e = pairs_[k];
    if (deg[e.u] < delta_ && deg[e.v] < delta_) {
      ++deg[e.u];
      ++deg[e.v];
      adj[e.u] |= 1U << e.v;
      adj[e.v] |= 1U << e.u;
      recurse(k + 1, chosen | (EdgeMask{1} << k), adj, deg, best);
      adj[e.u] &= ~(1U << e.v);
      adj[e.v] &= ~(1U << e.u);
      --deg[e.u];
      --deg[e.v];
    }
  }

  double evaluate(const std::array<std::uint32_t, kMaxOracleNodes>& adj) const {
    double total = 0.0;
    std::array<std::uint32_t, kMaxOracleNodes> dist{};
    for (NodeId s = 0; s < n_; ++s) {
      const auto row = demand_.row(s);
      if (row.empty()) continue;
      dist.fill(kUnreachable);
      dist[s] = 0;
      std::uint32_t seen = 1U << s;
      std::uint32_t frontier = seen;
      for (std::uint32_t depth = 1; frontier != 0; ++depth) {
        std::uint32_t next = 0;
        for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= adj[std::countr_zero(f)];
        next &= ~seen;
        seen |= next;
        for (std::uint32_t f = next; f != 0; f &= f - 1) dist[std::countr_zero(f)] = depth;
        frontier = next;
      }
      for (const auto& e : row) {
        if (dist[e.dst] == kUnreachable) return std::numeric_limits<double>::infinity();
        total += e.p * static_cast<double>(dist[e.dst]);
      }
    }
    return total;
  }

  const Demand& demand_;
  std::size_t delta_;
  std::size_t n_ = 0;
  std::vector<Edge> pairs_;
};

}  // namespace

OracleResult brute_force_bnd(const Demand& demand, std::size_t delta, std::size_t n_max) {
  const std::size_t n = demand.node_count();
  if (n > n_max || n > kMaxOracleNodes) {
    throw Error(ErrorCode::TooLarge, "brute force limited to " +
                                         std::to_string(std::min(n_max, kMaxOracleNodes)) +
                                         " nodes, demand has " + std::to_string(n));
  }
  if (delta < 1) throw Error(ErrorCode::BadArity, "degree bound must be >= 1");

  const BndSearch search(demand, delta);
  const std::size_t prefix_len = std::min<std::size_t>(4, search.edge_slots());
  const std::size_t tasks = std::size_t{1} << prefix_len;
  std::vector<Candidate> partial(tasks);
  parallel_for(tasks, [&](std::size_t t) { partial[t] = search.run(t, prefix_len); });

  Candidate best;
  std::uint64_t searched = 0;
  for (const auto& c : partial) {
    searched += c.searched;
    if (better(c, best)) best = c;
  }

  std::vector<Edge> edges;
  std::size_t k = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v, ++k) {
      if ((best.edges >> k) & 1U) edges.emplace_back(u, v);
    }
  }
  OracleResult r;
  r.optimum = best.epl;
  r.witness = HostNetwork::from_edges(n, edges);
  r.searched = searched;
  return r;
}

double exhaustive_prefix_code(const Distribution& d, std::size_t delta, std::size_t k_max) {
  if (delta < 2) throw Error(ErrorCode::BadArity, "prefix code arity must be >= 2");
  if (delta > (std::size_t{1} << 16)) throw Error(ErrorCode::TooLarge, "arity too large for enumeration");
  std::vector<double> p;
  for (double x : d.probs()) {
    if (x > 0.0) p.push_back(x);
  }
  if (p.empty()) throw Error(ErrorCode::NoMass, "distribution has no positive entry");
  if (p.size() > k_max) {
    throw Error(ErrorCode::TooLarge, "support " + std::to_string(p.size()) + " exceeds " +
                                         std::to_string(k_max));
  }
  std::sort(p.begin(), p.end(), std::greater<>());
  const std::size_t k = p.size();
  const std::size_t max_len = k - 1;

  // Kraft sums scaled by delta^max_len so everything stays integral.
  using Wide = unsigned __int128;
  std::vector<Wide> weight(max_len + 1);
  Wide budget = 1;
  for (std::size_t l = 0; l < max_len; ++l) budget *= delta;
  for (std::size_t l = 0; l <= max_len; ++l) {
    Wide w = 1;
    for (std::size_t j = l; j < max_len; ++j) w *= delta;
    weight[l] = w;
  }

  // Most probable symbols take the shortest codes, so only nondecreasing
  // length vectors need to be tried.
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, std::size_t, Wide, double)> go =
      [&](std::size_t i, std::size_t min_len, Wide used, double cost) {
        if (i == k) {
          best = std::min(best, cost);
          return;
        }
        for (std::size_t l = min_len; l <= max_len; ++l) {
          const Wide remaining = weight[l] + static_cast<Wide>(k - i - 1) * weight[max_len];
          if (used + remaining > budget) continue;
          go(i + 1, l, used + weight[l], cost + p[i] * static_cast<double>(l));
        }
      };
  go(0, 0, 0, 0.0);
  return best;
}

}  // namespace danforge
