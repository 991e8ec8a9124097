#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "sbmp/planner.hpp"

namespace sbmp {

/// Bidirectional RRT-Connect. Two trees rooted at the start and the goal
/// take turns: the active tree extends one eps-step toward a sample, then
/// the other tree greedily extends toward that new node until blocked or
/// joined. Joins are exact — steering returns the target verbatim once it
/// is within reach, so tree membership of the meeting point is shared.
class RrtConnectPlanner final : public Planner {
 public:
  std::string_view name() const override { return "rrt_connect"; }

  PlanResult solve(PlanRequest& req) override {
    planner_detail::validate_request(req);
    const planner_detail::Stopwatch clock;
    const CheckStats baseline = req.env.stats();

    PlanResult result;
    start_tree_.emplace(req.start);
    goal_tree_.emplace(req.goal);

    const SamplerContext ctx{req.env.bounds(), req.start, req.goal};
    bool active_is_start = true;

    while (result.stats.samples_drawn < req.max_nodes) {
      ++result.stats.iterations;
      MotionTree& active = active_is_start ? *start_tree_ : *goal_tree_;
      MotionTree& other = active_is_start ? *goal_tree_ : *start_tree_;

      const Configuration q_rand = req.sampler.next(ctx, req.rng);
      ++result.stats.samples_drawn;

      const std::size_t near_id = active.nearest(q_rand);
      ++result.stats.nn_queries;
      const Configuration& q_near = active.node(near_id).config;
      const Configuration q_new = steer(q_near, q_rand, req.eps);

      if (req.env.is_free_motion(q_near, q_new)) {
        const std::size_t active_leaf =
            active.add_node(q_new, near_id, distance(q_near, q_new));
        ++result.stats.nodes_added;
        req.sampler.report(true);

        // Connect heuristic: march the other tree toward q_new until a
        // motion is blocked or the trees meet. Each step lands exactly eps
        // closer, so the final step reproduces q_new bit-for-bit.
        for (;;) {
          const std::size_t other_near = other.nearest(q_new);
          ++result.stats.nn_queries;
          const Configuration& q_from = other.node(other_near).config;
          const Configuration q_step = steer(q_from, q_new, req.eps);
          if (!req.env.is_free_motion(q_from, q_step)) break;
          const std::size_t other_leaf =
              other.add_node(q_step, other_near, distance(q_from, q_step));
          ++result.stats.nodes_added;
          if (q_step == q_new) {
            const std::size_t start_leaf = active_is_start ? active_leaf : other_leaf;
            const std::size_t goal_leaf = active_is_start ? other_leaf : active_leaf;
            result.path = join_paths(start_tree_->extract_path(start_leaf),
                                     goal_tree_->extract_path(goal_leaf));
            result.success = true;
            result.cost = path_cost(result.path);
            finish(result, req, clock, baseline);
            return result;
          }
        }
      } else {
        req.sampler.report(false);
      }

      active_is_start = !active_is_start;
      if (req.observer) {
        req.observer({result.stats.iterations, result.cost, nullptr});
      }
    }

    finish(result, req, clock, baseline);
    return result;
  }

  std::vector<std::pair<Configuration, Configuration>> edges() const override {
    std::vector<std::pair<Configuration, Configuration>> out;
    if (start_tree_) out = planner_detail::tree_edges(*start_tree_);
    if (goal_tree_) {
      auto goal_edges = planner_detail::tree_edges(*goal_tree_);
      out.insert(out.end(), goal_edges.begin(), goal_edges.end());
    }
    return out;
  }

 private:
  // Both walks end at the meeting configuration; drop one copy and splice.
  static std::vector<Configuration> join_paths(std::vector<Configuration> from_start,
                                               std::vector<Configuration> from_goal) {
    from_start.pop_back();
    from_start.insert(from_start.end(), from_goal.rbegin(), from_goal.rend());
    return from_start;
  }

  void finish(PlanResult& result, const PlanRequest& req,
              const planner_detail::Stopwatch& clock,
              const CheckStats& baseline) const {
    result.stats.checks = req.env.stats() - baseline;
    result.stats.wall_time = clock.seconds();
  }

  std::optional<MotionTree> start_tree_;
  std::optional<MotionTree> goal_tree_;
};

}  // namespace sbmp
