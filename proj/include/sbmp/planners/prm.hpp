#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "sbmp/nn.hpp"
#include "sbmp/planner.hpp"

namespace sbmp {

/// Undirected roadmap over free configurations. Every stored edge passed a
/// free-motion check at insertion time; weights are metric distances.
struct Roadmap {
  std::vector<Configuration> vertices;
  std::vector<std::vector<std::pair<std::size_t, double>>> adjacency;
  std::size_t start_id = 0;
  std::size_t goal_id = 0;
};

namespace prm_detail {

/// Wires each vertex to its k nearest others, keeping edges whose motion is
/// free. Candidate pairs are gathered from both directions of the k-NN
/// relation, deduplicated, and validated in ascending (u,v) order so runs
/// reproduce exactly.
inline Roadmap build_roadmap(std::vector<Configuration> samples,
                             const Configuration& start, const Configuration& goal,
                             std::size_t k, EnvModel& env) {
  Roadmap map;
  map.vertices = std::move(samples);
  map.start_id = map.vertices.size();
  map.vertices.push_back(start);
  map.goal_id = map.vertices.size();
  map.vertices.push_back(goal);

  const std::size_t n = map.vertices.size();
  map.adjacency.assign(n, {});

  LinearIndex index;
  for (std::size_t i = 0; i < n; ++i) index.insert(i, map.vertices[i]);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : index.knn(map.vertices[i], k, i)) {
      pairs.emplace_back(std::min(i, j), std::max(i, j));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  for (const auto& [u, v] : pairs) {
    if (env.is_free_motion(map.vertices[u], map.vertices[v])) {
      const double w = distance(map.vertices[u], map.vertices[v]);
      map.adjacency[u].emplace_back(v, w);
      map.adjacency[v].emplace_back(u, w);
    }
  }
  return map;
}

/// Uniform-cost search from start_id to goal_id. Returns the vertex path,
/// or nothing when disconnected. Ties settle by smallest vertex id.
inline std::optional<std::vector<std::size_t>> shortest_path(const Roadmap& map) {
  const std::size_t n = map.vertices.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::size_t> pred(n, n);
  std::vector<bool> settled(n, false);

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[map.start_id] = 0.0;
  queue.emplace(0.0, map.start_id);

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = true;
    if (u == map.goal_id) break;
    for (const auto& [v, w] : map.adjacency[u]) {
      if (!settled[v] && d + w < dist[v]) {
        dist[v] = d + w;
        pred[v] = u;
        queue.emplace(dist[v], v);
      }
    }
  }

  if (!settled[map.goal_id]) return std::nullopt;
  std::vector<std::size_t> path;
  for (std::size_t at = map.goal_id; at != map.start_id; at = pred[at]) {
    path.push_back(at);
  }
  path.push_back(map.start_id);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace prm_detail

/// Probabilistic roadmap, single-query form: sample the budget, wire the
/// free samples plus start and goal by k-nearest connections, then answer
/// with a uniform-cost search over the roadmap.
class PrmPlanner final : public Planner {
 public:
  std::string_view name() const override { return "prm"; }

  PlanResult solve(PlanRequest& req) override {
    planner_detail::validate_request(req, /*needs_prm_k=*/true);
    const planner_detail::Stopwatch clock;
    const CheckStats baseline = req.env.stats();

    PlanResult result;
    const SamplerContext ctx{req.env.bounds(), req.start, req.goal};

    std::vector<Configuration> samples;
    while (result.stats.samples_drawn < req.max_nodes) {
      ++result.stats.iterations;
      Configuration q = req.sampler.next(ctx, req.rng);
      ++result.stats.samples_drawn;
      const bool free = req.env.is_free_config(q);
      req.sampler.report(free);
      if (free) {
        samples.push_back(std::move(q));
        ++result.stats.nodes_added;
      }
    }

    roadmap_ = prm_detail::build_roadmap(std::move(samples), req.start, req.goal,
                                         req.prm_k, req.env);
    if (auto vertex_path = prm_detail::shortest_path(*roadmap_)) {
      result.success = true;
      result.path.reserve(vertex_path->size());
      for (std::size_t v : *vertex_path) {
        result.path.push_back(roadmap_->vertices[v]);
      }
      result.cost = path_cost(result.path);
    }

    result.stats.checks = req.env.stats() - baseline;
    result.stats.wall_time = clock.seconds();
    return result;
  }

  std::vector<std::pair<Configuration, Configuration>> edges() const override {
    std::vector<std::pair<Configuration, Configuration>> out;
    if (!roadmap_) return out;
    for (std::size_t u = 0; u < roadmap_->adjacency.size(); ++u) {
      for (const auto& [v, w] : roadmap_->adjacency[u]) {
        if (u < v) out.emplace_back(roadmap_->vertices[u], roadmap_->vertices[v]);
      }
    }
    return out;
  }

  const Roadmap* roadmap() const { return roadmap_ ? &*roadmap_ : nullptr; }

 private:
  std::optional<Roadmap> roadmap_;
};

}  // namespace sbmp
