#include "danforge/demand.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "danforge/error.hpp"

namespace danforge {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDemand: return "EmptyDemand";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::InvalidDemand: return "InvalidDemand";
    case ErrorCode::NoMass: return "NoMass";
    case ErrorCode::BadBase: return "BadBase";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::ItemNotInTree: return "ItemNotInTree";
    case ErrorCode::WrongFamily: return "WrongFamily";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::BadSpec: return "BadSpec";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
  }
  return "Unknown";
}

Distribution Distribution::from_probabilities(std::vector<double> probs) {
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::InvalidDemand, "distribution entries must be finite and >= 0");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw Error(ErrorCode::InvalidDemand,
                "distribution sums to " + std::to_string(total) + ", expected 1");
  }
  return Distribution(std::move(probs));
}

Distribution Distribution::normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidDemand, "weights must be finite and >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::NoMass, "distribution has no mass");
  for (double& w : weights) w /= total;
  return Distribution(std::move(weights));
}

std::size_t Distribution::support_size() const {
  return static_cast<std::size_t>(
      std::count_if(probs_.begin(), probs_.end(), [](double p) { return p > 0.0; }));
}

Demand Demand::from_entries(std::size_t n, std::vector<DemandEntry> entries) {
  if (entries.empty()) throw Error(ErrorCode::EmptyDemand, "demand has no entries");
  std::sort(entries.begin(), entries.end(), [](const DemandEntry& a, const DemandEntry& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  double total = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& e = entries[k];
    if (e.src >= n || e.dst >= n) {
      throw Error(ErrorCode::InvalidDemand, "node id out of range in demand entry (" +
                                                std::to_string(e.src) + "," +
                                                std::to_string(e.dst) + ")");
    }
    if (e.src == e.dst) {
      throw Error(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(e.src));
    }
    if (!(e.p > 0.0) || !std::isfinite(e.p)) {
      throw Error(ErrorCode::InvalidDemand, "stored probabilities must be positive");
    }
    if (k > 0 && entries[k - 1].src == e.src && entries[k - 1].dst == e.dst) {
      throw Error(ErrorCode::InvalidDemand, "duplicate demand pair (" + std::to_string(e.src) +
                                                "," + std::to_string(e.dst) + ")");
    }
    total += e.p;
  }
  if (std::abs(total - 1.0) > kProbTolerance) {
    throw Error(ErrorCode::InvalidDemand,
                "demand probabilities sum to " + std::to_string(total) + ", expected 1");
  }

  Demand d;
  d.n_ = n;
  d.entries_ = std::move(entries);
  d.row_start_.assign(n + 1, 0);
  d.col_start_.assign(n + 1, 0);
  for (const auto& e : d.entries_) {
    ++d.row_start_[e.src + 1];
    ++d.col_start_[e.dst + 1];
  }
  std::partial_sum(d.row_start_.begin(), d.row_start_.end(), d.row_start_.begin());
  std::partial_sum(d.col_start_.begin(), d.col_start_.end(), d.col_start_.begin());
  d.col_index_.resize(d.entries_.size());
  std::vector<std::size_t> fill(d.col_start_.begin(), d.col_start_.end() - 1);
  // Entries are sorted by source, so each column comes out sorted by source.
  for (std::size_t k = 0; k < d.entries_.size(); ++k) {
    d.col_index_[fill[d.entries_[k].dst]++] = k;
  }
  return d;
}

std::span<const DemandEntry> Demand::row(NodeId src) const {
  return std::span<const DemandEntry>(entries_).subspan(row_start_[src],
                                                        row_start_[src + 1] - row_start_[src]);
}

std::span<const std::size_t> Demand::column(NodeId dst) const {
  return std::span<const std::size_t>(col_index_)
      .subspan(col_start_[dst], col_start_[dst + 1] - col_start_[dst]);
}

double Demand::probability(NodeId src, NodeId dst) const {
  const auto r = row(src);
  auto it = std::lower_bound(r.begin(), r.end(), dst,
                             [](const DemandEntry& e, NodeId v) { return e.dst < v; });
  return (it != r.end() && it->dst == dst) ? it->p : 0.0;
}

std::vector<std::pair<NodeId, NodeId>> Demand::undirected_support() const {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(entries_.size());
  for (const auto& e : entries_) pairs.emplace_back(std::min(e.src, e.dst), std::max(e.src, e.dst));
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  return pairs;
}

Demand normalize(std::size_t n, std::span<const WeightedPair> raw) {
  std::map<std::pair<NodeId, NodeId>, double> merged;
  double total = 0.0;
  for (const auto& w : raw) {
    if (w.src >= n || w.dst >= n) {
      throw Error(ErrorCode::InvalidDemand, "node id out of range (" + std::to_string(w.src) +
                                                "," + std::to_string(w.dst) + ")");
    }
    if (!(w.w >= 0.0) || !std::isfinite(w.w)) {
      throw Error(ErrorCode::InvalidDemand, "weights must be finite and >= 0");
    }
    if (w.src == w.dst) {
      if (w.w > 0.0) throw Error(ErrorCode::SelfLoop, "self-loop at node " + std::to_string(w.src));
      continue;
    }
    if (w.w == 0.0) continue;
    merged[{w.src, w.dst}] += w.w;
    total += w.w;
  }
  if (merged.empty()) throw Error(ErrorCode::EmptyDemand, "all demand weights are zero");
  std::vector<DemandEntry> entries;
  entries.reserve(merged.size());
  for (const auto& [key, weight] : merged) {
    entries.push_back({key.first, key.second, weight / total});
  }
  return Demand::from_entries(n, std::move(entries));
}

Marginals marginals(const Demand& demand) {
  std::vector<double> src(demand.node_count(), 0.0);
  std::vector<double> dst(demand.node_count(), 0.0);
  for (const auto& e : demand.entries()) {
    src[e.src] += e.p;
    dst[e.dst] += e.p;
  }
  return {Distribution::from_probabilities(std::move(src)),
          Distribution::from_probabilities(std::move(dst))};
}

Distribution conditional_dist(const Demand& demand, NodeId node, Direction direction) {
  if (node >= demand.node_count()) {
    throw Error(ErrorCode::InvalidDemand, "node id out of range: " + std::to_string(node));
  }
  std::vector<double> weights(demand.node_count(), 0.0);
  if (direction == Direction::out) {
    for (const auto& e : demand.row(node)) weights[e.dst] = e.p;
  } else {
    for (std::size_t k : demand.column(node)) weights[demand.entries()[k].src] = demand.entries()[k].p;
  }
  try {
    return Distribution::normalized(std::move(weights));
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NoMass) throw;
    throw Error(ErrorCode::NoMass, "node " + std::to_string(node) + " has no " +
                                       (direction == Direction::out ? "outgoing" : "incoming") +
                                       " demand");
  }
}

namespace {

void check_base(double base) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw Error(ErrorCode::BadBase, "logarithm base must be > 1");
  }
}

}  // namespace

double entropy(std::span<const double> probs, double base) {
  check_base(base);
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return std::max(0.0, h / std::log(base));
}

double entropy(const Distribution& d, double base) { return entropy(d.probs(), base); }

// Computed straight from the joint: H(Y|X) = sum p(i,j) log(p(i)/p(i,j)).
double conditional_entropy(const Demand& demand, Conditioning which, double base) {
  check_base(base);
  std::vector<double> cond_marginal(demand.node_count(), 0.0);
  const bool by_src = which == Conditioning::y_given_x;
  for (const auto& e : demand.entries()) cond_marginal[by_src ? e.src : e.dst] += e.p;
  double h = 0.0;
  for (const auto& e : demand.entries()) {
    h += e.p * std::log(cond_marginal[by_src ? e.src : e.dst] / e.p);
  }
  return std::max(0.0, h / std::log(base));
}

EntropyStats entropy_stats(const Demand& demand, double base) {
  const auto m = marginals(demand);
  EntropyStats s;
  s.base = base;
  s.hx = entropy(m.src, base);
  s.hy = entropy(m.dst, base);
  s.hx_given_y = conditional_entropy(demand, Conditioning::x_given_y, base);
  s.hy_given_x = conditional_entropy(demand, Conditioning::y_given_x, base);
  return s;
}

DemandClass classify(const Demand& demand) {
  const std::size_t n = demand.node_count();
  DemandClass c;

  c.regular = true;
  for (NodeId v = 1; v < n; ++v) {
    if (demand.out_degree(v) != demand.out_degree(0) || demand.in_degree(v) != demand.in_degree(0)) {
      c.regular = false;
      break;
    }
  }

  const double target = 1.0 / static_cast<double>(demand.support_size());
  c.uniform = std::all_of(demand.entries().begin(), demand.entries().end(),
                          [&](const DemandEntry& e) { return std::abs(e.p - target) <= kProbTolerance; });

  c.symmetric = std::all_of(demand.entries().begin(), demand.entries().end(), [&](const DemandEntry& e) {
    return std::abs(demand.probability(e.dst, e.src) - e.p) <= kProbTolerance;
  });

  const auto pairs = demand.undirected_support();
  c.avg_degree = n == 0 ? 0.0 : 2.0 * static_cast<double>(pairs.size()) / static_cast<double>(n);

  // Tree: n - 1 undirected edges and a single component (union-find).
  if (pairs.size() + 1 == n) {
    std::vector<NodeId> parent(n);
    std::iota(parent.begin(), parent.end(), NodeId{0});
    auto find = [&](NodeId v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    std::size_t components = n;
    for (const auto& [u, v] : pairs) {
      const NodeId a = find(u), b = find(v);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
    c.is_tree = components == 1;
  }
  return c;
}

}  // namespace danforge
