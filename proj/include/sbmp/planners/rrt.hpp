#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "sbmp/planner.hpp"

namespace sbmp {

/// Single-tree RRT. Grows from the start by bounded steering toward
/// goal-biased samples; the first node that enters the goal radius with a
/// free direct motion to the goal ends the search. Probabilistically
/// complete, makes no optimality claim.
class RrtPlanner final : public Planner {
 public:
  std::string_view name() const override { return "rrt"; }

  PlanResult solve(PlanRequest& req) override {
    planner_detail::validate_request(req);
    const planner_detail::Stopwatch clock;
    const CheckStats baseline = req.env.stats();

    PlanResult result;
    tree_.emplace(req.start);

    if (distance(req.start, req.goal) <= req.goal_radius &&
        req.env.is_free_motion(req.start, req.goal)) {
      result.success = true;
      result.path = {req.start, req.goal};
      result.cost = path_cost(result.path);
      finish(result, req, clock, baseline);
      return result;
    }

    planner_detail::GoalBiasedDraw draw(req.sampler, req.p_goal);
    const SamplerContext ctx{req.env.bounds(), req.start, req.goal};

    while (result.stats.samples_drawn < req.max_nodes) {
      ++result.stats.iterations;
      const Configuration q_rand = draw.next(ctx, req.rng);
      ++result.stats.samples_drawn;

      const std::size_t near_id = tree_->nearest(q_rand);
      ++result.stats.nn_queries;
      const Configuration& q_near = tree_->node(near_id).config;
      const Configuration q_new = steer(q_near, q_rand, req.eps);

      if (!req.env.is_free_motion(q_near, q_new)) {
        draw.report(false);
        observe(req, result);
        continue;
      }
      const std::size_t new_id =
          tree_->add_node(q_new, near_id, distance(q_near, q_new));
      ++result.stats.nodes_added;
      draw.report(true);

      if (distance(q_new, req.goal) <= req.goal_radius &&
          req.env.is_free_motion(q_new, req.goal)) {
        result.path = tree_->extract_path(new_id);
        result.path.push_back(req.goal);
        result.success = true;
        result.cost = path_cost(result.path);
        break;
      }
      observe(req, result);
    }

    finish(result, req, clock, baseline);
    return result;
  }

  std::vector<std::pair<Configuration, Configuration>> edges() const override {
    return tree_ ? planner_detail::tree_edges(*tree_) : decltype(edges()){};
  }

 private:
  void observe(const PlanRequest& req, const PlanResult& result) const {
    if (req.observer) {
      req.observer({result.stats.iterations, result.cost, &*tree_});
    }
  }

  void finish(PlanResult& result, const PlanRequest& req,
              const planner_detail::Stopwatch& clock,
              const CheckStats& baseline) const {
    result.stats.checks = req.env.stats() - baseline;
    result.stats.wall_time = clock.seconds();
  }

  std::optional<MotionTree> tree_;
};

}  // namespace sbmp
