#include "danforge/trees.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <string>
#include <tuple>

#include "danforge/error.hpp"

namespace danforge {

namespace {

void check_arity(std::size_t arity) {
  if (arity < 2) throw Error(ErrorCode::BadArity, "tree arity must be >= 2");
}

}  // namespace

double CodeTree::expected_depth() const {
  double total = 0.0;
  for (std::size_t i = 0; i < item_prob.size(); ++i) {
    if (item_depth[i]) total += item_prob[i] * static_cast<double>(*item_depth[i]);
  }
  return total;
}

RootedTree RootedTree::from_parents(std::size_t arity, std::vector<std::size_t> parents,
                                    std::vector<std::size_t> items) {
  check_arity(arity);
  if (parents.empty() || parents.size() != items.size()) {
    throw Error(ErrorCode::InvalidDemand, "tree needs one parent entry per item");
  }
  if (parents[0] != kNoParent) throw Error(ErrorCode::InvalidDemand, "position 0 must be the root");
  RootedTree t;
  t.arity_ = arity;
  t.children_.resize(parents.size());
  t.depth_.assign(parents.size(), 0);
  for (std::size_t k = 1; k < parents.size(); ++k) {
    if (parents[k] >= k) {
      throw Error(ErrorCode::InvalidDemand, "parent of position " + std::to_string(k) +
                                                " must precede it");
    }
    t.children_[parents[k]].push_back(k);
    t.depth_[k] = t.depth_[parents[k]] + 1;
    if (t.children_[parents[k]].size() > arity) {
      throw Error(ErrorCode::BadArity, "position " + std::to_string(parents[k]) +
                                           " exceeds arity " + std::to_string(arity));
    }
  }
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (!t.position_.emplace(items[k], k).second) {
      throw Error(ErrorCode::InvalidDemand, "item " + std::to_string(items[k]) + " repeated");
    }
  }
  t.parents_ = std::move(parents);
  t.items_ = std::move(items);
  return t;
}

std::size_t RootedTree::height() const {
  return depth_.empty() ? 0 : *std::max_element(depth_.begin(), depth_.end());
}

std::optional<std::size_t> RootedTree::position_of(std::size_t item) const {
  auto it = position_.find(item);
  if (it == position_.end()) return std::nullopt;
  return it->second;
}

std::size_t RootedTree::item_depth(std::size_t item) const {
  const auto pos = position_of(item);
  if (!pos) throw Error(ErrorCode::ItemNotInTree, "item " + std::to_string(item) + " not in tree");
  return depth_[*pos];
}

std::vector<std::pair<std::size_t, std::size_t>> RootedTree::item_edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(items_.empty() ? 0 : items_.size() - 1);
  for (std::size_t k = 1; k < items_.size(); ++k) out.emplace_back(items_[parents_[k]], items_[k]);
  return out;
}

CodeTree huffman_dary(const Distribution& d, std::size_t arity) {
  check_arity(arity);
  CodeTree code;
  code.arity = arity;
  code.item_prob = d.probs();
  code.item_depth.assign(d.size(), std::nullopt);

  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0.0) {
      CodeTree::Node leaf;
      leaf.item = i;
      leaf.weight = d[i];
      code.nodes.push_back(std::move(leaf));
    }
  }
  if (code.nodes.empty()) throw Error(ErrorCode::NoMass, "distribution has no positive entry");
  if (code.nodes.size() == 1) {
    code.root = 0;
    code.item_depth[*code.nodes[0].item] = 0;
    return code;
  }

  while ((code.nodes.size() - 1) % (arity - 1) != 0) {
    CodeTree::Node pad;
    pad.dummy = true;
    code.nodes.push_back(std::move(pad));
  }

  // Dummies carry weight zero, so they are merged first regardless of order.
  using Key = std::tuple<double, std::size_t>;  // (weight, node index)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  for (std::size_t k = 0; k < code.nodes.size(); ++k) heap.emplace(code.nodes[k].weight, k);
  while (heap.size() > 1) {
    CodeTree::Node parent;
    for (std::size_t c = 0; c < arity && !heap.empty(); ++c) {
      const auto [w, k] = heap.top();
      heap.pop();
      parent.children.push_back(k);
      parent.weight += w;
    }
    code.nodes.push_back(std::move(parent));
    heap.emplace(code.nodes.back().weight, code.nodes.size() - 1);
  }
  code.root = std::get<1>(heap.top());

  std::vector<std::pair<std::size_t, std::size_t>> stack{{code.root, 0}};
  while (!stack.empty()) {
    const auto [k, depth] = stack.back();
    stack.pop_back();
    const auto& node = code.nodes[k];
    if (node.item) code.item_depth[*node.item] = depth;
    for (std::size_t c : node.children) stack.emplace_back(c, depth + 1);
  }
  return code;
}

RootedTree promote_leaves(const CodeTree& code) {
  const std::size_t total = code.nodes.size();
  std::vector<std::vector<std::size_t>> children(total);
  std::vector<std::size_t> parent(total, kNoParent);
  std::vector<std::optional<std::size_t>> item(total);
  std::vector<char> alive(total, 0);

  // Collect the live part of the tree (everything reachable from the root).
  std::vector<std::size_t> stack{code.root};
  while (!stack.empty()) {
    const std::size_t k = stack.back();
    stack.pop_back();
    alive[k] = 1;
    item[k] = code.nodes[k].item;
    for (std::size_t c : code.nodes[k].children) {
      children[k].push_back(c);
      parent[c] = k;
      stack.push_back(c);
    }
  }

  auto is_leaf = [&](std::size_t k) { return children[k].empty(); };
  auto detach = [&](std::size_t k) {
    auto& siblings = children[parent[k]];
    siblings.erase(std::find(siblings.begin(), siblings.end(), k));
    alive[k] = 0;
  };
  // Removes k and then every ancestor left vacant and childless.
  auto remove_upwards = [&](std::size_t k) {
    while (parent[k] != kNoParent) {
      const std::size_t up = parent[k];
      detach(k);
      if (!children[up].empty() || item[up]) return;
      k = up;
    }
  };

  for (std::size_t k = 0; k < total; ++k) {
    if (alive[k] && code.nodes[k].dummy) remove_upwards(k);
  }

  auto best_leaf_below = [&](std::size_t top) {
    std::optional<std::size_t> best;
    std::vector<std::size_t> todo{top};
    while (!todo.empty()) {
      const std::size_t k = todo.back();
      todo.pop_back();
      if (is_leaf(k) && item[k] && k != top) {
        const double pk = code.item_prob[*item[k]];
        if (!best) {
          best = k;
        } else {
          const double pb = code.item_prob[*item[*best]];
          if (pk > pb || (pk == pb && *item[k] < *item[*best])) best = k;
        }
      }
      for (std::size_t c : children[k]) todo.push_back(c);
    }
    return best;
  };

  std::vector<std::size_t> parents_out;
  std::vector<std::size_t> items_out;
  std::deque<std::pair<std::size_t, std::size_t>> queue{{code.root, kNoParent}};
  while (!queue.empty()) {
    const auto [k, out_parent] = queue.front();
    queue.pop_front();
    if (!item[k]) {
      const auto leaf = best_leaf_below(k);
      // Every vacant live node has at least one real leaf below it.
      item[k] = item[*leaf];
      item[*leaf].reset();
      remove_upwards(*leaf);
    }
    const std::size_t pos = items_out.size();
    parents_out.push_back(out_parent);
    items_out.push_back(*item[k]);
    for (std::size_t c : children[k]) queue.emplace_back(c, pos);
  }
  return RootedTree::from_parents(code.arity, std::move(parents_out), std::move(items_out));
}

double rooted_epl(const Distribution& d, const RootedTree& tree, std::optional<std::size_t> anchor) {
  if (anchor && tree.position_of(*anchor)) {
    throw Error(ErrorCode::InvalidDemand, "anchor node must not be an item of the tree");
  }
  const double extra = anchor ? 1.0 : 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] > 0.0) total += d[i] * (static_cast<double>(tree.item_depth(i)) + extra);
  }
  return total;
}

RootedTree balanced_tree(std::span<const std::size_t> items, std::size_t arity) {
  check_arity(arity);
  if (items.empty()) throw Error(ErrorCode::InvalidDemand, "balanced tree needs at least one item");
  std::vector<std::size_t> parents(items.size());
  parents[0] = kNoParent;
  for (std::size_t k = 1; k < items.size(); ++k) parents[k] = (k - 1) / arity;
  return RootedTree::from_parents(arity, std::move(parents),
                                  std::vector<std::size_t>(items.begin(), items.end()));
}

RootedTree near_optimal_tree(const Distribution& d, std::size_t arity) {
  return promote_leaves(huffman_dary(d, arity));
}

}  // namespace danforge
