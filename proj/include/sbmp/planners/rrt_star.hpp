#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "sbmp/planner.hpp"

namespace sbmp {

/// Asymptotically-optimal RRT*. On top of the RRT loop it wires each new
/// node to the cost-minimizing parent in a shrinking neighborhood and
/// rewires neighbors whose cost-to-come would drop through the new node,
/// propagating the improvement to their subtrees. The planner spends its
/// whole sample budget and reports the best goal-reaching path found.
class RrtStarPlanner final : public Planner {
 public:
  std::string_view name() const override { return "rrt_star"; }

  PlanResult solve(PlanRequest& req) override {
    planner_detail::validate_request(req);
    const planner_detail::Stopwatch clock;
    const CheckStats baseline = req.env.stats();

    PlanResult result;
    tree_.emplace(req.start);

    const double c_min = distance(req.start, req.goal);
    if (c_min <= req.goal_radius && req.env.is_free_motion(req.start, req.goal)) {
      // The straight segment is a metric lower bound on any path, so this
      // is already optimal and there is nothing left to improve.
      result.success = true;
      result.path = {req.start, req.goal};
      result.cost = path_cost(result.path);
      finish(result, req, clock, baseline);
      return result;
    }

    planner_detail::GoalBiasedDraw draw(req.sampler, req.p_goal);
    const double d = static_cast<double>(req.env.dim());
    const double gamma =
        req.rewire_multiplier * 2.0 * req.eps * std::pow(1.0 + 1.0 / d, 1.0 / d);

    // Nodes with a verified free motion to the goal; the best solution is
    // the cheapest of these plus its final hop. Rewires only lower node
    // costs and the set only grows, so the best cost never increases.
    std::vector<std::size_t> goal_links;
    double best_total = std::numeric_limits<double>::infinity();
    std::size_t best_link = 0;

    SamplerContext ctx{req.env.bounds(), req.start, req.goal};

    while (result.stats.samples_drawn < req.max_nodes) {
      ++result.stats.iterations;
      ctx.best_cost = std::isfinite(best_total) ? std::max(best_total, c_min)
                                                : best_total;
      const Configuration q_rand = draw.next(ctx, req.rng);
      ++result.stats.samples_drawn;

      const std::size_t near_id = tree_->nearest(q_rand);
      ++result.stats.nn_queries;
      const Configuration& q_near = tree_->node(near_id).config;
      const Configuration q_new = steer(q_near, q_rand, req.eps);

      if (!req.env.is_free_motion(q_near, q_new)) {
        draw.report(false);
        observe(req, result, best_total);
        continue;
      }

      const double n = static_cast<double>(tree_->size());
      const double radius =
          std::min(gamma * std::pow(std::log(n) / n, 1.0 / d), 2.0 * req.eps);
      std::vector<std::size_t> neighbors = tree_->near(q_new, radius);
      ++result.stats.nn_queries;

      // Choose parent: cheapest cost-to-come through any neighbor with a
      // free connection. The nearest node is already verified, so the scan
      // always terminates with a valid parent.
      struct Candidate {
        double total;
        std::size_t id;
        double edge;
      };
      std::vector<Candidate> candidates;
      candidates.reserve(neighbors.size() + 1);
      const double near_edge = distance(q_near, q_new);
      candidates.push_back({tree_->node(near_id).cost + near_edge, near_id, near_edge});
      for (std::size_t nb : neighbors) {
        if (nb == near_id) continue;
        const double edge = distance(tree_->node(nb).config, q_new);
        candidates.push_back({tree_->node(nb).cost + edge, nb, edge});
      }
      std::sort(candidates.begin(), candidates.end(),
                [](const Candidate& a, const Candidate& b) {
                  return a.total != b.total ? a.total < b.total : a.id < b.id;
                });
      std::size_t parent = near_id;
      double parent_edge = near_edge;
      for (const Candidate& c : candidates) {
        if (c.id == near_id ||
            req.env.is_free_motion(tree_->node(c.id).config, q_new)) {
          parent = c.id;
          parent_edge = c.edge;
          break;
        }
      }

      const std::size_t new_id = tree_->add_node(q_new, parent, parent_edge);
      ++result.stats.nodes_added;
      draw.report(true);

      // Rewire: re-parent any neighbor that gets cheaper through the new
      // node, descendants updated transitively.
      for (std::size_t nb : neighbors) {
        if (nb == parent) continue;
        const double edge = distance(q_new, tree_->node(nb).config);
        if (tree_->node(new_id).cost + edge < tree_->node(nb).cost &&
            req.env.is_free_motion(q_new, tree_->node(nb).config)) {
          tree_->reparent(nb, new_id, edge);
        }
      }

      if (distance(q_new, req.goal) <= req.goal_radius &&
          req.env.is_free_motion(q_new, req.goal)) {
        goal_links.push_back(new_id);
      }

      for (std::size_t link : goal_links) {
        const double total =
            tree_->node(link).cost + distance(tree_->node(link).config, req.goal);
        if (total < best_total) {
          best_total = total;
          best_link = link;
        }
      }
      observe(req, result, best_total);
    }

    if (!goal_links.empty()) {
      result.success = true;
      result.path = tree_->extract_path(best_link);
      result.path.push_back(req.goal);
      result.cost = path_cost(result.path);
    }
    finish(result, req, clock, baseline);
    return result;
  }

  std::vector<std::pair<Configuration, Configuration>> edges() const override {
    return tree_ ? planner_detail::tree_edges(*tree_) : decltype(edges()){};
  }

 private:
  void observe(const PlanRequest& req, const PlanResult& result,
               double best_total) const {
    if (req.observer) {
      req.observer({result.stats.iterations, best_total, &*tree_});
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
