#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "danforge/demand.hpp"

namespace danforge {

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

// Optimal Delta-ary prefix code over the positive entries of a distribution.
// Items live only at leaves; `item_depth[i]` is the code length of item i
// (index into the distribution), or nullopt when p_i == 0.
struct CodeTree {
  struct Node {
    std::vector<std::size_t> children;
    std::optional<std::size_t> item;  // set on real leaves
    bool dummy = false;               // zero-weight padding leaf
    double weight = 0.0;              // probability mass of the subtree
  };

  std::size_t arity = 2;
  std::size_t root = 0;
  std::vector<Node> nodes;
  std::vector<double> item_prob;
  std::vector<std::optional<std::size_t>> item_depth;

  double expected_depth() const;
};

// Rooted tree whose every position holds an item. Position 0 is the root and
// positions are numbered in breadth-first order.
class RootedTree {
 public:
  // parents[0] must be kNoParent and parents[k] < k for k > 0. Throws
  // BadArity when a position has more than `arity` children and
  // InvalidDemand when items repeat or the parent array is malformed.
  static RootedTree from_parents(std::size_t arity, std::vector<std::size_t> parents,
                                 std::vector<std::size_t> items);

  std::size_t arity() const { return arity_; }
  std::size_t size() const { return items_.size(); }
  std::size_t root_item() const { return items_.front(); }
  std::size_t item_at(std::size_t pos) const { return items_[pos]; }
  std::size_t parent(std::size_t pos) const { return parents_[pos]; }
  std::span<const std::size_t> children(std::size_t pos) const { return children_[pos]; }
  std::size_t depth(std::size_t pos) const { return depth_[pos]; }
  std::size_t height() const;

  std::optional<std::size_t> position_of(std::size_t item) const;
  // Depth of `item`; throws ItemNotInTree.
  std::size_t item_depth(std::size_t item) const;

  const std::vector<std::size_t>& parents() const { return parents_; }
  const std::vector<std::size_t>& items() const { return items_; }

  // Tree edges expressed as (parent item, child item).
  std::vector<std::pair<std::size_t, std::size_t>> item_edges() const;

 private:
  RootedTree() = default;
  std::size_t arity_ = 2;
  std::vector<std::size_t> parents_;
  std::vector<std::size_t> items_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::size_t> depth_;
  std::unordered_map<std::size_t, std::size_t> position_;
};

// Delta-ary Huffman code. The alphabet is padded with zero-weight dummies so
// that (count - 1) mod (arity - 1) == 0; merges take the `arity` lightest
// nodes ordered by (weight, creation order), where leaves are created in item
// order before any merged node. Throws BadArity when arity < 2 and NoMass
// when the distribution has no positive entry.
CodeTree huffman_dary(const Distribution& d, std::size_t arity);

// Moves items from leaves into the vacant internal positions of a code tree:
// positions are visited top-down and each vacant one takes the most probable
// item still sitting at a leaf below it. Dummy leaves are dropped first.
RootedTree promote_leaves(const CodeTree& code);

// sum_i p_i * depth(i). With `anchor` set, the tree hangs off that node by a
// single edge to the root, which adds one hop to every item.
double rooted_epl(const Distribution& d, const RootedTree& tree,
                  std::optional<std::size_t> anchor = std::nullopt);

// Complete arity-ary tree over `items` in breadth-first order; items[0] is
// the root. Throws BadArity when arity < 2.
RootedTree balanced_tree(std::span<const std::size_t> items, std::size_t arity);

// Huffman code followed by leaf promotion, with items mapped back to
// distribution indices.
RootedTree near_optimal_tree(const Distribution& d, std::size_t arity);

}  // namespace danforge
