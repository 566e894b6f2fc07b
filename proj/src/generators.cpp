#include "danforge/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "danforge/error.hpp"
#include "danforge/rng.hpp"
#include "danforge/trees.hpp"

namespace danforge {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 9> kFamilyNames{{
    {Family::tree, "tree"},
    {Family::sparse_random, "sparse_random"},
    {Family::hypercube, "hypercube"},
    {Family::regular_uniform, "regular_uniform"},
    {Family::complete_uniform, "complete_uniform"},
    {Family::thick_grid, "thick_grid"},
    {Family::clique_lines, "clique_lines"},
    {Family::star_of_cliques, "star_of_cliques"},
    {Family::product, "product"},
}};

[[noreturn]] void bad_spec(const std::string& message) { throw Error(ErrorCode::BadSpec, message); }

void shuffle(std::vector<NodeId>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// Weight 1 / (rank + 1)^skew with ranks drawn as a random permutation; all
// ones when skew is zero (no randomness consumed).
std::vector<double> zipf_weights(std::size_t count, double skew, SplitMix64& rng) {
  if (skew < 0.0 || !std::isfinite(skew)) bad_spec("skew must be finite and >= 0");
  std::vector<double> w(count, 1.0);
  if (skew == 0.0) return w;
  std::vector<NodeId> rank(count);
  std::iota(rank.begin(), rank.end(), NodeId{0});
  shuffle(rank, rng);
  for (std::size_t k = 0; k < count; ++k) w[k] = std::pow(static_cast<double>(rank[k]) + 1.0, -skew);
  return w;
}

Generated from_arcs(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& arcs, double skew,
                    SplitMix64& rng) {
  const auto w = zipf_weights(arcs.size(), skew, rng);
  std::vector<WeightedPair> raw;
  raw.reserve(arcs.size());
  for (std::size_t k = 0; k < arcs.size(); ++k) raw.push_back({arcs[k].first, arcs[k].second, w[k]});
  auto demand = normalize(n, raw);
  auto support = HostNetwork::support_of(demand);
  return {std::move(demand), std::move(support)};
}

std::vector<std::pair<NodeId, NodeId>> both_ways(const std::vector<Edge>& edges) {
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(2 * edges.size());
  for (const auto& e : edges) {
    arcs.emplace_back(e.u, e.v);
    arcs.emplace_back(e.v, e.u);
  }
  return arcs;
}

struct CliqueLinesLayout {
  std::size_t clique = 0;
  std::vector<Edge> clique_edges;
  std::vector<Edge> line_edges;
};

CliqueLinesLayout clique_lines_layout(std::size_t n) {
  if (n < 4) bad_spec("clique_lines needs n >= 4");
  CliqueLinesLayout out;
  out.clique = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  const std::size_t k = out.clique;
  for (NodeId a = 0; a < k; ++a) {
    for (NodeId b = a + 1; b < k; ++b) out.clique_edges.emplace_back(a, b);
  }
  // The remaining n - k nodes form k lines whose lengths differ by at most 1.
  NodeId next = static_cast<NodeId>(k);
  const std::size_t rest = n - k;
  for (NodeId line = 0; line < k; ++line) {
    const std::size_t len = rest / k + (line < rest % k ? 1 : 0);
    NodeId prev = line;
    for (std::size_t j = 0; j < len; ++j, ++next) {
      out.line_edges.emplace_back(prev, next);
      prev = next;
    }
  }
  return out;
}

struct StarOfCliquesLayout {
  std::size_t clique_size = 0;                // nominal ceil(log2 n)
  std::vector<std::vector<NodeId>> cliques;   // first member touches the hub
};

StarOfCliquesLayout star_of_cliques_layout(std::size_t n) {
  if (n < 8) bad_spec("star_of_cliques needs n >= 8");
  StarOfCliquesLayout out;
  out.clique_size = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(n)) - 1e-12)));
  const std::size_t L = out.clique_size;
  const std::size_t count = (n - 1) / L;
  if (count < 2) bad_spec("star_of_cliques needs at least two cliques");
  const std::size_t extra = (n - 1) - count * L;
  NodeId next = 1;  // node 0 is the hub
  for (std::size_t c = 0; c < count; ++c) {
    const std::size_t size = L + (c < extra ? 1 : 0);
    std::vector<NodeId> members;
    for (std::size_t j = 0; j < size; ++j) members.push_back(next++);
    out.cliques.push_back(std::move(members));
  }
  return out;
}

Generated gen_tree(const GenSpec& s, SplitMix64& rng) {
  if (s.n < 2) bad_spec("tree needs n >= 2");
  std::vector<std::pair<NodeId, NodeId>> arcs;
  std::vector<NodeId> endpoints;
  for (NodeId child = 1; child < s.n; ++child) {
    // Half of the attachments are preferential, which grows hubs.
    NodeId parent = 0;
    if (!endpoints.empty() && rng.uniform() < 0.5) {
      parent = endpoints[rng.below(endpoints.size())];
    } else {
      parent = static_cast<NodeId>(rng.below(child));
    }
    endpoints.push_back(parent);
    endpoints.push_back(child);
    switch (rng.below(3)) {
      case 0: arcs.emplace_back(parent, child); break;
      case 1: arcs.emplace_back(child, parent); break;
      default:
        arcs.emplace_back(parent, child);
        arcs.emplace_back(child, parent);
    }
  }
  return from_arcs(s.n, arcs, s.skew, rng);
}

Generated gen_sparse(const GenSpec& s, SplitMix64& rng) {
  if (s.n < 2) bad_spec("sparse_random needs n >= 2");
  const std::size_t m = s.m == 0 ? 3 * s.n : s.m;
  if (m > s.n * (s.n - 1)) bad_spec("sparse_random: m exceeds n(n-1)");
  const auto popularity = zipf_weights(s.n, s.hub_skew, rng);
  std::vector<double> cumulative(s.n);
  std::partial_sum(popularity.begin(), popularity.end(), cumulative.begin());
  auto draw = [&] {
    const double x = rng.uniform() * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), x);
    return static_cast<NodeId>(std::min<std::size_t>(it - cumulative.begin(), s.n - 1));
  };
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<std::pair<NodeId, NodeId>> arcs;
  const std::size_t max_attempts = 200 * m + 1000;
  for (std::size_t attempt = 0; arcs.size() < m; ++attempt) {
    if (attempt == max_attempts) bad_spec("sparse_random: could not place m distinct arcs");
    const NodeId a = draw(), b = draw();
    if (a == b || !seen.emplace(a, b).second) continue;
    arcs.emplace_back(a, b);
  }
  return from_arcs(s.n, arcs, s.skew, rng);
}

Generated gen_hypercube(const GenSpec& s, SplitMix64& rng) {
  if (s.d < 1 || s.d > 20) bad_spec("hypercube needs 1 <= d <= 20");
  const std::size_t n = std::size_t{1} << s.d;
  std::vector<Edge> edges;
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t j = 0; j < s.d; ++j) {
      const std::size_t y = x ^ (std::size_t{1} << j);
      if (x < y) edges.emplace_back(static_cast<NodeId>(x), static_cast<NodeId>(y));
    }
  }
  return from_arcs(n, both_ways(edges), s.skew, rng);
}

Generated gen_regular(const GenSpec& s, SplitMix64& rng) {
  if (s.n < 2 || s.r < 1 || s.r >= s.n) bad_spec("regular_uniform needs 1 <= r < n");
  if ((s.n * s.r) % 2 != 0) bad_spec("regular_uniform needs n * r even");
  // Circulant graph on a random labelling: offsets 1..r/2, plus the antipode
  // when r is odd (n is then even).
  std::vector<NodeId> label(s.n);
  std::iota(label.begin(), label.end(), NodeId{0});
  shuffle(label, rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < s.n; ++i) {
    for (std::size_t off = 1; off <= s.r / 2; ++off) {
      edges.emplace_back(label[i], label[(i + off) % s.n]);
    }
    if (s.r % 2 == 1 && i < s.n / 2) edges.emplace_back(label[i], label[i + s.n / 2]);
  }
  return from_arcs(s.n, both_ways(edges), 0.0, rng);
}

Generated gen_complete(const GenSpec& s, SplitMix64& rng) {
  if (s.n < 2) bad_spec("complete_uniform needs n >= 2");
  std::vector<std::pair<NodeId, NodeId>> arcs;
  for (NodeId a = 0; a < s.n; ++a) {
    for (NodeId b = 0; b < s.n; ++b) {
      if (a != b) arcs.emplace_back(a, b);
    }
  }
  return from_arcs(s.n, arcs, 0.0, rng);
}

Generated gen_thick_grid(const GenSpec& s, SplitMix64& rng) {
  if (s.rows < 1 || s.cols < 1 || s.rows * s.cols < 2) bad_spec("thick_grid needs at least 2 cells");
  if (s.radius < 1) bad_spec("thick_grid needs radius >= 1");
  const auto R = static_cast<std::ptrdiff_t>(s.radius);
  const auto rows = static_cast<std::ptrdiff_t>(s.rows), cols = static_cast<std::ptrdiff_t>(s.cols);
  std::vector<Edge> edges;
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    for (std::ptrdiff_t c = 0; c < cols; ++c) {
      const auto id = static_cast<NodeId>(r * cols + c);
      for (std::ptrdiff_t dr = 0; dr <= R; ++dr) {
        for (std::ptrdiff_t dc = -R; dc <= R; ++dc) {
          if (dr == 0 && dc <= 0) continue;  // each unordered pair once
          const auto r2 = r + dr, c2 = c + dc;
          if (r2 >= rows || c2 < 0 || c2 >= cols) continue;
          edges.emplace_back(id, static_cast<NodeId>(r2 * cols + c2));
        }
      }
    }
  }
  return from_arcs(s.rows * s.cols, both_ways(edges), s.skew, rng);
}

Generated gen_clique_lines(const GenSpec& s, SplitMix64& rng) {
  auto layout = clique_lines_layout(s.n);
  auto edges = layout.clique_edges;
  edges.insert(edges.end(), layout.line_edges.begin(), layout.line_edges.end());
  return from_arcs(s.n, both_ways(edges), s.skew, rng);
}

Generated gen_star_of_cliques(const GenSpec& s, SplitMix64& rng) {
  const auto layout = star_of_cliques_layout(s.n);
  std::vector<Edge> edges;
  for (const auto& members : layout.cliques) {
    edges.emplace_back(0, members.front());
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) edges.emplace_back(members[a], members[b]);
    }
  }
  return from_arcs(s.n, both_ways(edges), s.skew, rng);
}

Generated gen_product(const GenSpec& s, SplitMix64& rng) {
  if (s.n < 2) bad_spec("product needs n >= 2");
  const auto w = zipf_weights(s.n, s.skew, rng);
  std::vector<WeightedPair> raw;
  for (NodeId a = 0; a < s.n; ++a) {
    for (NodeId b = 0; b < s.n; ++b) {
      if (a != b) raw.push_back({a, b, w[a] * w[b]});
    }
  }
  auto demand = normalize(s.n, raw);
  auto support = HostNetwork::support_of(demand);
  return {std::move(demand), std::move(support)};
}

}  // namespace

std::string_view to_string(Family family) {
  for (const auto& [f, name] : kFamilyNames) {
    if (f == family) return name;
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  for (const auto& [f, known] : kFamilyNames) {
    if (known == name) return f;
  }
  bad_spec("unknown family '" + std::string(name) + "'");
}

Generated generate(const GenSpec& spec) {
  SplitMix64 rng(spec.seed);
  switch (spec.family) {
    case Family::tree: return gen_tree(spec, rng);
    case Family::sparse_random: return gen_sparse(spec, rng);
    case Family::hypercube: return gen_hypercube(spec, rng);
    case Family::regular_uniform: return gen_regular(spec, rng);
    case Family::complete_uniform: return gen_complete(spec, rng);
    case Family::thick_grid: return gen_thick_grid(spec, rng);
    case Family::clique_lines: return gen_clique_lines(spec, rng);
    case Family::star_of_cliques: return gen_star_of_cliques(spec, rng);
    case Family::product: return gen_product(spec, rng);
  }
  bad_spec("unknown family");
}

HostNetwork divergence_spanner(const GenSpec& spec) {
  std::vector<Edge> edges;
  if (spec.family == Family::clique_lines) {
    const auto layout = clique_lines_layout(spec.n);
    std::vector<std::size_t> clique(layout.clique);
    std::iota(clique.begin(), clique.end(), std::size_t{0});
    for (const auto& [a, b] : balanced_tree(clique, 2).item_edges()) {
      edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
    edges.insert(edges.end(), layout.line_edges.begin(), layout.line_edges.end());
  } else if (spec.family == Family::star_of_cliques) {
    const auto layout = star_of_cliques_layout(spec.n);
    std::vector<std::size_t> star{0};
    for (const auto& members : layout.cliques) {
      star.push_back(members.front());
      for (std::size_t j = 1; j < members.size(); ++j) edges.emplace_back(members.front(), members[j]);
    }
    for (const auto& [a, b] : balanced_tree(star, layout.clique_size).item_edges()) {
      edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    }
  } else {
    bad_spec("divergence spanners exist only for clique_lines and star_of_cliques");
  }
  return HostNetwork::from_edges(spec.n, edges);
}

}  // namespace danforge
