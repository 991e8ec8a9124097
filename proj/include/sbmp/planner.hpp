#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string_view>
#include <utility>
#include <vector>

#include "sbmp/cspace.hpp"
#include "sbmp/env.hpp"
#include "sbmp/error.hpp"
#include "sbmp/motion_tree.hpp"
#include "sbmp/rng.hpp"
#include "sbmp/sampler.hpp"

namespace sbmp {

struct PlannerStats {
  std::uint64_t nodes_added = 0;    // nodes grown from samples (roots excluded)
  std::uint64_t samples_drawn = 0;
  std::uint64_t nn_queries = 0;
  std::uint64_t iterations = 0;
  double wall_time = 0.0;  // seconds; the one non-deterministic field
  CheckStats checks;
};

struct PlanResult {
  bool success = false;
  std::vector<Configuration> path;  // start ... goal when successful
  double cost = std::numeric_limits<double>::infinity();
  PlannerStats stats;
};

/// Per-iteration peek for audits and convergence tracking. Planning behavior
/// never depends on the observer.
struct PlannerObservation {
  std::uint64_t iteration = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  const MotionTree* tree = nullptr;  // null for planners without a single tree
};
using PlannerObserver = std::function<void(const PlannerObservation&)>;

/// One fully-specified planning problem. The environment, sampler, and RNG
/// are owned by the caller and must outlive the solve call; a request plus
/// its seed determines the result byte-for-byte (wall time aside).
struct PlanRequest {
  EnvModel& env;
  Sampler& sampler;
  Configuration start;
  Configuration goal;
  Rng& rng;
  std::size_t max_nodes = 2000;  // sample budget, not retained-node count
  double eps = 10.0;
  double goal_radius = 10.0;
  double p_goal = 0.05;
  std::size_t prm_k = 10;
  double rewire_multiplier = 6.0;
  PlannerObserver observer;
};

struct InvalidPlanInput : InputError {
  using InputError::InputError;
};

class Planner {
 public:
  virtual ~Planner() = default;

  virtual PlanResult solve(PlanRequest& req) = 0;
  virtual std::string_view name() const = 0;

  /// Edges of the grown tree/roadmap for visualization, in a deterministic
  /// order. Empty before solve. Only called when rendering is requested.
  virtual std::vector<std::pair<Configuration, Configuration>> edges() const {
    return {};
  }
};

namespace planner_detail {

inline void validate_request(PlanRequest& req, bool needs_prm_k = false) {
  if (req.start.size() != req.env.dim() || req.goal.size() != req.env.dim()) {
    throw InvalidPlanInput("start/goal dimension does not match the environment");
  }
  if (req.max_nodes < 1) {
    throw InvalidPlanInput("max_nodes must be at least 1");
  }
  if (!(req.eps > 0.0)) {
    throw InvalidPlanInput("eps must be positive");
  }
  if (req.goal_radius < 0.0) {
    throw InvalidPlanInput("goal_radius must be non-negative");
  }
  if (!(req.p_goal >= 0.0 && req.p_goal <= 1.0)) {
    throw InvalidPlanInput("p_goal must lie in [0,1]");
  }
  if (needs_prm_k && req.prm_k < 1) {
    throw InvalidPlanInput("prm_k must be at least 1");
  }
  if (!req.env.is_free_config(req.start)) {
    throw InvalidPlanInput("start configuration is in collision");
  }
  if (!req.env.is_free_config(req.goal)) {
    throw InvalidPlanInput("goal configuration is in collision");
  }
}

/// Goal biasing layered over whatever sampler the request carries: one coin
/// draw, then either the goal verbatim or a delegated draw. With a uniform
/// inner sampler this reproduces the goal_biased sampler's stream exactly.
/// report() is forwarded only when the inner sampler actually drew, keeping
/// its one-report-per-next contract intact.
class GoalBiasedDraw {
 public:
  GoalBiasedDraw(Sampler& inner, double p_goal) : inner_(inner), p_goal_(p_goal) {}

  Configuration next(const SamplerContext& ctx, Rng& rng) {
    if (rng.next_double() < p_goal_) {
      delegated_ = false;
      return ctx.goal;
    }
    delegated_ = true;
    return inner_.next(ctx, rng);
  }

  void report(bool accepted) {
    if (delegated_) inner_.report(accepted);
  }

 private:
  Sampler& inner_;
  double p_goal_;
  bool delegated_ = false;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Tree edges as (parent config, child config), ordered by child id.
inline std::vector<std::pair<Configuration, Configuration>> tree_edges(
    const MotionTree& tree) {
  std::vector<std::pair<Configuration, Configuration>> out;
  out.reserve(tree.size() > 0 ? tree.size() - 1 : 0);
  for (const TreeNode& node : tree.nodes()) {
    if (node.parent) {
      out.emplace_back(tree.node(*node.parent).config, node.config);
    }
  }
  return out;
}

}  // namespace planner_detail
}  // namespace sbmp
