#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "danforge/types.hpp"

namespace danforge {

struct WeightedPair {
  NodeId src = 0;
  NodeId dst = 0;
  double w = 0.0;
};

struct DemandEntry {
  NodeId src = 0;
  NodeId dst = 0;
  double p = 0.0;
};

// A probability vector indexed by node id (or by category).
class Distribution {
 public:
  Distribution() = default;

  // Validates entries >= 0 and sum == 1 within kProbTolerance.
  static Distribution from_probabilities(std::vector<double> probs);

  // Divides by the total; throws NoMass when the total is not positive.
  static Distribution normalized(std::vector<double> weights);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::size_t support_size() const;

 private:
  explicit Distribution(std::vector<double> probs) : probs_(std::move(probs)) {}
  std::vector<double> probs_;
};

// Normalized joint distribution over ordered node pairs (src != dst).
// Entries are sorted by (src, dst) and only positive probabilities are kept.
// Row and column views are precomputed so per-node queries are O(degree).
class Demand {
 public:
  // Validates every invariant; the probabilities must already sum to 1.
  static Demand from_entries(std::size_t n, std::vector<DemandEntry> entries);

  std::size_t node_count() const { return n_; }
  std::size_t support_size() const { return entries_.size(); }
  std::span<const DemandEntry> entries() const { return entries_; }

  // Entries with the given source, sorted by destination.
  std::span<const DemandEntry> row(NodeId src) const;
  // Indices into entries() of pairs with the given destination, by source.
  std::span<const std::size_t> column(NodeId dst) const;

  double probability(NodeId src, NodeId dst) const;

  std::size_t out_degree(NodeId v) const { return row(v).size(); }
  std::size_t in_degree(NodeId v) const { return column(v).size(); }

  // Unordered support pairs {u, v} with u < v, sorted.
  std::vector<std::pair<NodeId, NodeId>> undirected_support() const;

 private:
  Demand() = default;
  std::size_t n_ = 0;
  std::vector<DemandEntry> entries_;
  std::vector<std::size_t> row_start_;
  std::vector<std::size_t> col_start_;
  std::vector<std::size_t> col_index_;
};

enum class Direction { out, in };
enum class Conditioning { x_given_y, y_given_x };

struct Marginals {
  Distribution src;
  Distribution dst;
};

struct DemandClass {
  bool regular = false;
  bool uniform = false;
  bool symmetric = false;
  bool is_tree = false;
  double avg_degree = 0.0;
};

struct EntropyStats {
  double base = 2.0;
  double hx = 0.0;
  double hy = 0.0;
  double hx_given_y = 0.0;
  double hy_given_x = 0.0;
};

// p(i,j) = w(i,j) / sum(w). Zero weights are dropped and repeated pairs are
// accumulated before dividing.
Demand normalize(std::size_t n, std::span<const WeightedPair> raw);

Marginals marginals(const Demand& demand);

// Row (out) or column (in) of the demand renormalized to a distribution
// over all n nodes.
Distribution conditional_dist(const Demand& demand, NodeId node, Direction direction);

double entropy(std::span<const double> probs, double base);
double entropy(const Distribution& d, double base);

// Sum over the conditioning variable of its marginal times the entropy of
// the matching conditional.
double conditional_entropy(const Demand& demand, Conditioning which, double base);

EntropyStats entropy_stats(const Demand& demand, double base);

DemandClass classify(const Demand& demand);

}  // namespace danforge
