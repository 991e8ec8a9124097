#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "sbmp/cspace.hpp"
#include "sbmp/error.hpp"

namespace sbmp {

/// Exhaustive-scan index. The reference implementation every other index
/// must agree with exactly, including tie-breaking by smallest id.
class LinearIndex {
 public:
  void insert(std::size_t id, const Configuration& q) {
    items_.emplace_back(id, q);
  }

  std::size_t size() const { return items_.size(); }

  std::size_t nearest(const Configuration& q) const {
    if (items_.empty()) {
      throw ContractViolation("nearest: index is empty");
    }
    double best_sq = std::numeric_limits<double>::infinity();
    std::size_t best_id = 0;
    for (const auto& [id, p] : items_) {
      const double d_sq = squared_distance(p, q);
      if (d_sq < best_sq || (d_sq == best_sq && id < best_id)) {
        best_sq = d_sq;
        best_id = id;
      }
    }
    return best_id;
  }

  /// Ids with distance <= radius, ascending.
  std::vector<std::size_t> near(const Configuration& q, double radius) const {
    if (radius < 0.0) {
      throw ContractViolation("near: radius must be non-negative");
    }
    const double r_sq = radius * radius;
    std::vector<std::size_t> out;
    for (const auto& [id, p] : items_) {
      if (squared_distance(p, q) <= r_sq) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// The k nearest ids ordered by (distance, id). Used for roadmap wiring.
  std::vector<std::size_t> knn(const Configuration& q, std::size_t k,
                               std::size_t exclude_id) const {
    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(items_.size());
    for (const auto& [id, p] : items_) {
      if (id == exclude_id) continue;
      scored.emplace_back(squared_distance(p, q), id);
    }
    k = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + k, scored.end());
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) out.push_back(scored[i].second);
    return out;
  }

 private:
  std::vector<std::pair<std::size_t, Configuration>> items_;
};

/// Incremental kd-tree with cycling split axes. No rebalancing — motion
/// trees insert in randomized order, which keeps depth reasonable at the
/// scales this framework targets. Query results match LinearIndex exactly:
/// identical distance arithmetic, pruning only on strict inequality so
/// equal-distance candidates stay reachable, ties broken by smallest id.
class KdTreeIndex {
 public:
  void insert(std::size_t id, const Configuration& q) {
    if (!nodes_.empty() && q.size() != nodes_[0].point.size()) {
      throw ContractViolation("insert: dimension differs from existing points");
    }
    const int fresh = static_cast<int>(nodes_.size());
    if (nodes_.empty()) {
      nodes_.push_back({q, id, 0, -1, -1});
      return;
    }
    int at = 0;
    for (;;) {
      Node& node = nodes_[at];
      int& child = q[node.axis] < node.point[node.axis] ? node.left : node.right;
      if (child < 0) {
        const std::size_t next_axis = (node.axis + 1) % q.size();
        child = fresh;
        nodes_.push_back({q, id, next_axis, -1, -1});
        return;
      }
      at = child;
    }
  }

  std::size_t size() const { return nodes_.size(); }

  std::size_t nearest(const Configuration& q) const {
    if (nodes_.empty()) {
      throw ContractViolation("nearest: index is empty");
    }
    double best_sq = std::numeric_limits<double>::infinity();
    std::size_t best_id = 0;
    nearest_walk(0, q, best_sq, best_id);
    return best_id;
  }

  std::vector<std::size_t> near(const Configuration& q, double radius) const {
    if (radius < 0.0) {
      throw ContractViolation("near: radius must be non-negative");
    }
    std::vector<std::size_t> out;
    if (!nodes_.empty()) {
      near_walk(0, q, radius * radius, out);
      std::sort(out.begin(), out.end());
    }
    return out;
  }

 private:
  struct Node {
    Configuration point;
    std::size_t id;
    std::size_t axis;
    int left;
    int right;
  };

  void nearest_walk(int at, const Configuration& q, double& best_sq,
                    std::size_t& best_id) const {
    const Node& node = nodes_[at];
    const double d_sq = squared_distance(node.point, q);
    if (d_sq < best_sq || (d_sq == best_sq && node.id < best_id)) {
      best_sq = d_sq;
      best_id = node.id;
    }
    const double diff = q[node.axis] - node.point[node.axis];
    const int first = diff < 0.0 ? node.left : node.right;
    const int second = diff < 0.0 ? node.right : node.left;
    if (first >= 0) nearest_walk(first, q, best_sq, best_id);
    // Equal axis distance can still hide an exact tie with a smaller id.
    if (second >= 0 && !(diff * diff > best_sq)) {
      nearest_walk(second, q, best_sq, best_id);
    }
  }

  void near_walk(int at, const Configuration& q, double r_sq,
                 std::vector<std::size_t>& out) const {
    const Node& node = nodes_[at];
    if (squared_distance(node.point, q) <= r_sq) out.push_back(node.id);
    const double diff = q[node.axis] - node.point[node.axis];
    const int first = diff < 0.0 ? node.left : node.right;
    const int second = diff < 0.0 ? node.right : node.left;
    if (first >= 0) near_walk(first, q, r_sq, out);
    if (second >= 0 && !(diff * diff > r_sq)) {
      near_walk(second, q, r_sq, out);
    }
  }

  std::vector<Node> nodes_;
};

}  // namespace sbmp
