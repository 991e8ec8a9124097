#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sbmp/cspace.hpp"
#include "sbmp/error.hpp"
#include "sbmp/nn.hpp"

namespace sbmp {

struct TreeNode {
  std::size_t id = 0;
  Configuration config;
  std::optional<std::size_t> parent;  // none for the root
  double cost = 0.0;                  // cost-to-come along tree edges
  double edge_length = 0.0;           // metric length of the parent edge
};

/// Append-only tree of configurations with cost-to-come bookkeeping and a
/// kd-tree over the node positions. Node ids are dense and appended in
/// insertion order, so a parent id is always smaller than its child's.
/// Reparenting (the RRT* rewire) recomputes descendant costs from stored
/// edge lengths rather than deltas, so costs never drift from the invariant
/// cost = parent.cost + edge_length.
class MotionTree {
 public:
  explicit MotionTree(const Configuration& root) {
    nodes_.push_back({0, root, std::nullopt, 0.0, 0.0});
    children_.emplace_back();
    index_.insert(0, root);
  }

  std::size_t size() const { return nodes_.size(); }

  const TreeNode& node(std::size_t id) const {
    require_id(id);
    return nodes_[id];
  }

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& children(std::size_t id) const {
    require_id(id);
    return children_[id];
  }

  std::size_t add_node(const Configuration& q, std::size_t parent,
                       double edge_length) {
    require_id(parent);
    const std::size_t id = nodes_.size();
    nodes_.push_back({id, q, parent, nodes_[parent].cost + edge_length,
                      edge_length});
    children_.emplace_back();
    children_[parent].push_back(id);
    index_.insert(id, q);
    return id;
  }

  /// Id of the node closest to q, ties to the smallest id.
  std::size_t nearest(const Configuration& q) const { return index_.nearest(q); }

  /// Ids within radius of q, ascending.
  std::vector<std::size_t> near(const Configuration& q, double radius) const {
    return index_.near(q, radius);
  }

  /// Rewire: hang `id` under `new_parent` with the given edge length, then
  /// refresh cost-to-come across the whole affected subtree.
  void reparent(std::size_t id, std::size_t new_parent, double edge_length) {
    require_id(id);
    require_id(new_parent);
    if (id == 0) {
      throw ContractViolation("reparent: cannot reparent the root");
    }
    auto& old_siblings = children_[*nodes_[id].parent];
    old_siblings.erase(std::find(old_siblings.begin(), old_siblings.end(), id));
    nodes_[id].parent = new_parent;
    nodes_[id].edge_length = edge_length;
    children_[new_parent].push_back(id);
    refresh_costs(id);
  }

  /// Configurations from the root to `leaf`, inclusive.
  std::vector<Configuration> extract_path(std::size_t leaf) const {
    require_id(leaf);
    std::vector<Configuration> path;
    std::optional<std::size_t> at = leaf;
    while (at) {
      path.push_back(nodes_[*at].config);
      at = nodes_[*at].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  }

 private:
  void require_id(std::size_t id) const {
    if (id >= nodes_.size()) {
      throw ContractViolation("unknown node id " + std::to_string(id));
    }
  }

  void refresh_costs(std::size_t from) {
    // Iterative DFS; subtrees can be deep after long runs.
    std::vector<std::size_t> stack{from};
    while (!stack.empty()) {
      const std::size_t at = stack.back();
      stack.pop_back();
      nodes_[at].cost = nodes_[*nodes_[at].parent].cost + nodes_[at].edge_length;
      for (std::size_t child : children_[at]) stack.push_back(child);
    }
  }

  std::vector<TreeNode> nodes_;
  std::vector<std::vector<std::size_t>> children_;
  KdTreeIndex index_;
};

}  // namespace sbmp
