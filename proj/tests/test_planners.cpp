#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <vector>

#include "sbmp/planners/prm.hpp"
#include "sbmp/planners/rrt.hpp"
#include "sbmp/planners/rrt_connect.hpp"
#include "sbmp/planners/rrt_star.hpp"
#include "test_util.hpp"

using sbmp::Configuration;
using sbmp::ContractViolation;
using sbmp::distance;
using sbmp::EnvModel;
using sbmp::InvalidPlanInput;
using sbmp::MotionTree;
using sbmp::OccupancyGrid;
using sbmp::Planner;
using sbmp::PlannerObserver;
using sbmp::PlanRequest;
using sbmp::PlanResult;
using sbmp::PointMassEnv;
using sbmp::Rng;
using sbmp::UniformSampler;

namespace {

std::shared_ptr<const OccupancyGrid> empty_grid(int w, int h) {
  return std::make_shared<const OccupancyGrid>(w, h);
}

PlanResult solve_on(Planner& planner, EnvModel& env, sbmp::Sampler& sampler,
                    std::uint64_t seed, Configuration start, Configuration goal,
                    std::size_t max_nodes, double eps, double goal_radius = 10.0,
                    double p_goal = 0.05, std::size_t prm_k = 10,
                    double rewire = 6.0, PlannerObserver observer = {}) {
  Rng rng(seed);
  PlanRequest req{env,         sampler, std::move(start), std::move(goal),
                  rng,         max_nodes, eps,            goal_radius,
                  p_goal,      prm_k,     rewire,         std::move(observer)};
  return planner.solve(req);
}

void check_path_valid(const PlanResult& result,
                      std::shared_ptr<const OccupancyGrid> grid,
                      const Configuration& start, const Configuration& goal,
                      double goal_radius) {
  REQUIRE(result.success);
  REQUIRE(!result.path.empty());
  REQUIRE(result.path.front() == start);
  REQUIRE(distance(result.path.back(), goal) <= goal_radius + 1e-9);
  PointMassEnv fresh(std::move(grid));
  double total = 0.0;
  for (std::size_t i = 1; i < result.path.size(); ++i) {
    REQUIRE(fresh.is_free_motion(result.path[i - 1], result.path[i]));
    total += distance(result.path[i - 1], result.path[i]);
  }
  REQUIRE(result.cost == Catch::Approx(total).margin(1e-6));
}

}  // namespace

TEST_CASE("extract_path examples") {
  MotionTree tree(Configuration{1, 2});
  CHECK(tree.extract_path(0) == std::vector<Configuration>{{1, 2}});

  const auto a = tree.add_node({2, 2}, 0, 1.0);
  const auto b = tree.add_node({3, 2}, a, 1.0);
  CHECK(tree.extract_path(b) ==
        std::vector<Configuration>{{1, 2}, {2, 2}, {3, 2}});

  CHECK_THROWS_AS(tree.extract_path(99), ContractViolation);
}

TEST_CASE("extract_path equals the reversed parent walk on random trees") {
  sbmp::Rng rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    MotionTree tree(test_util::random_config(rng, 2));
    for (int i = 0; i < 100; ++i) {
      const auto q = test_util::random_config(rng, 2);
      const std::size_t parent = rng.next_u64() % tree.size();
      tree.add_node(q, parent, distance(tree.node(parent).config, q));
    }
    const std::size_t leaf = rng.next_u64() % tree.size();
    // Independent walk: collect leaf-to-root, then reverse.
    std::vector<Configuration> walked;
    std::optional<std::size_t> at = leaf;
    while (at) {
      walked.push_back(tree.node(*at).config);
      at = tree.node(*at).parent;
    }
    std::reverse(walked.begin(), walked.end());
    REQUIRE(tree.extract_path(leaf) == walked);
  }
}

TEST_CASE("reparenting refreshes subtree costs exactly") {
  MotionTree tree(Configuration{0, 0});
  const auto a = tree.add_node({10, 0}, 0, 10.0);
  const auto b = tree.add_node({10, 10}, a, 10.0);
  const auto c = tree.add_node({10, 20}, b, 10.0);
  const auto shortcut = tree.add_node({0, 10}, 0, 10.0);
  CHECK(tree.node(c).cost == 30.0);

  tree.reparent(b, shortcut, distance(tree.node(shortcut).config, {10, 10}));
  CHECK(tree.node(b).cost == 20.0);
  CHECK(tree.node(c).cost == 30.0);
  for (const auto& node : tree.nodes()) {
    if (node.parent) {
      CHECK(node.cost ==
            tree.node(*node.parent).cost + node.edge_length);
    }
  }
}

TEST_CASE("rrt immediate goal") {
  PointMassEnv env(empty_grid(100, 100));
  UniformSampler sampler;
  sbmp::RrtPlanner rrt;
  const auto result =
      solve_on(rrt, env, sampler, 1, {50, 50}, {55, 50}, 2000, 10.0, 10.0);
  REQUIRE(result.success);
  CHECK(result.path.size() == 2);
  CHECK(result.stats.iterations == 0);
  CHECK(result.stats.samples_drawn == 0);
  CHECK(result.cost == 5.0);
}

TEST_CASE("rrt fails cleanly when the goal is unreachable") {
  // Everything occupied except the start and goal pixels; the goal pixel is
  // sealed away from the start.
  auto grid = std::make_shared<OccupancyGrid>(20, 20, true);
  grid->set(2, 2, false);
  grid->set(17, 17, false);
  PointMassEnv env(grid);
  UniformSampler sampler;
  sbmp::RrtPlanner rrt;
  const auto result =
      solve_on(rrt, env, sampler, 2, {2.5, 2.5}, {17.5, 17.5}, 300, 3.0, 2.0);
  CHECK_FALSE(result.success);
  CHECK(result.path.empty());
  CHECK(result.cost == std::numeric_limits<double>::infinity());
  CHECK(result.stats.samples_drawn == 300);
  CHECK(result.stats.nodes_added == 0);
}

TEST_CASE("rrt solves the empty map across seeds") {
  int successes = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PointMassEnv env(empty_grid(100, 100));
    UniformSampler sampler;
    sbmp::RrtPlanner rrt;
    const auto result =
        solve_on(rrt, env, sampler, seed, {10, 10}, {90, 90}, 2000, 10.0);
    if (result.success) {
      ++successes;
      check_path_valid(result, env.grid_ptr(), {10, 10}, {90, 90}, 10.0);
      CHECK(result.stats.nodes_added <= result.stats.samples_drawn);
    }
  }
  CHECK(successes >= 19);
}

TEST_CASE("rrt rejects invalid start or goal as input errors") {
  auto grid = std::make_shared<OccupancyGrid>(10, 10);
  grid->set(1, 1, true);
  PointMassEnv env(grid);
  UniformSampler sampler;
  sbmp::RrtPlanner rrt;
  CHECK_THROWS_AS(
      solve_on(rrt, env, sampler, 1, {1.5, 1.5}, {8, 8}, 100, 2.0),
      InvalidPlanInput);
  CHECK_THROWS_AS(
      solve_on(rrt, env, sampler, 1, {8, 8}, {1.5, 1.5}, 100, 2.0),
      InvalidPlanInput);
}

TEST_CASE("rrt-star path cost respects the metric lower bound") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PointMassEnv env(empty_grid(100, 100));
    UniformSampler sampler;
    sbmp::RrtStarPlanner rrt_star;
    const auto result =
        solve_on(rrt_star, env, sampler, seed, {10, 10}, {90, 90}, 1500, 10.0);
    if (result.success) {
      CHECK(result.cost >= distance({10, 10}, {90, 90}) - 1e-6);
      check_path_valid(result, env.grid_ptr(), {10, 10}, {90, 90}, 10.0);
    }
  }
}

TEST_CASE("rrt-star keeps every stored cost equal to its root-path length") {
  PointMassEnv env(empty_grid(60, 60));
  UniformSampler sampler;
  sbmp::RrtStarPlanner rrt_star;

  std::size_t audits = 0;
  PlannerObserver audit = [&](const sbmp::PlannerObservation& obs) {
    REQUIRE(obs.tree != nullptr);
    ++audits;
    for (const auto& node : obs.tree->nodes()) {
      double recomputed = 0.0;
      std::optional<std::size_t> at = node.id;
      while (obs.tree->node(*at).parent) {
        const auto& n = obs.tree->node(*at);
        recomputed += distance(obs.tree->node(*n.parent).config, n.config);
        at = n.parent;
      }
      REQUIRE(node.cost == Catch::Approx(recomputed).margin(1e-6));
    }
  };
  const auto result = solve_on(rrt_star, env, sampler, 3, {5, 5}, {55, 55}, 300,
                               8.0, 8.0, 0.05, 10, 6.0, audit);
  CHECK(audits == 300);
  CHECK(result.success);
}

TEST_CASE("rrt-star cost trace never increases") {
  PointMassEnv env(empty_grid(100, 100));
  UniformSampler sampler;
  sbmp::RrtStarPlanner rrt_star;
  double last = std::numeric_limits<double>::infinity();
  PlannerObserver trace = [&](const sbmp::PlannerObservation& obs) {
    REQUIRE(obs.best_cost <= last);
    last = obs.best_cost;
  };
  const auto result = solve_on(rrt_star, env, sampler, 4, {10, 10}, {90, 90},
                               1500, 10.0, 10.0, 0.05, 10, 6.0, trace);
  CHECK(result.success);
  CHECK(result.cost == last);
}

TEST_CASE("rrt-connect joins directly connectable queries on iteration 1") {
  PointMassEnv env(empty_grid(50, 50));
  UniformSampler sampler;
  sbmp::RrtConnectPlanner connect;
  const auto result =
      solve_on(connect, env, sampler, 5, {10, 25}, {40, 25}, 500, 50.0);
  REQUIRE(result.success);
  CHECK(result.stats.iterations == 1);
  check_path_valid(result, env.grid_ptr(), {10, 25}, {40, 25}, 0.0);
}

TEST_CASE("rrt-connect fails when the goal is sealed") {
  auto grid = std::make_shared<OccupancyGrid>(40, 40);
  // Solid box around the goal region.
  for (int i = 25; i <= 35; ++i) {
    grid->set(i, 25, true);
    grid->set(i, 35, true);
    grid->set(25, i, true);
    grid->set(35, i, true);
  }
  PointMassEnv env(grid);
  UniformSampler sampler;
  sbmp::RrtConnectPlanner connect;
  const auto result =
      solve_on(connect, env, sampler, 6, {5, 5}, {30, 30}, 400, 4.0);
  CHECK_FALSE(result.success);
  CHECK(result.stats.samples_drawn == 400);
}

TEST_CASE("rrt-connect beats rrt through a narrow passage") {
  // Two rooms joined by a 3px gap in a 3px-thick wall.
  auto grid = std::make_shared<OccupancyGrid>(100, 100);
  for (int x = 49; x <= 51; ++x) {
    for (int y = 0; y < 100; ++y) {
      if (y < 48 || y > 50) grid->set(x, y, true);
    }
  }

  int rrt_successes = 0, connect_successes = 0;
  std::vector<double> rrt_samples, connect_samples;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    {
      PointMassEnv env(grid);
      UniformSampler sampler;
      sbmp::RrtPlanner rrt;
      const auto r =
          solve_on(rrt, env, sampler, seed, {25, 50}, {75, 50}, 1500, 10.0);
      if (r.success) ++rrt_successes;
      rrt_samples.push_back(static_cast<double>(r.stats.samples_drawn));
    }
    {
      PointMassEnv env(grid);
      UniformSampler sampler;
      sbmp::RrtConnectPlanner connect;
      const auto r =
          solve_on(connect, env, sampler, seed, {25, 50}, {75, 50}, 1500, 10.0);
      if (r.success) ++connect_successes;
      connect_samples.push_back(static_cast<double>(r.stats.samples_drawn));
    }
  }
  const auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  INFO("rrt " << rrt_successes << " connect " << connect_successes);
  CHECK(connect_successes >= rrt_successes);
  CHECK(median(connect_samples) < median(rrt_samples));
}

TEST_CASE("prm roadmap with only start and goal wires a single edge") {
  PointMassEnv env(empty_grid(30, 30));
  const auto map = sbmp::prm_detail::build_roadmap({}, Configuration{5, 5},
                                                   Configuration{25, 25}, 1, env);
  REQUIRE(map.vertices.size() == 2);
  REQUIRE(map.adjacency[map.start_id].size() == 1);
  REQUIRE(map.adjacency[map.goal_id].size() == 1);
  const auto path = sbmp::prm_detail::shortest_path(map);
  REQUIRE(path.has_value());
  CHECK(*path == std::vector<std::size_t>{map.start_id, map.goal_id});
}

TEST_CASE("prm fails across a full wall") {
  auto grid = std::make_shared<OccupancyGrid>(60, 60);
  for (int y = 0; y < 60; ++y) grid->set(30, y, true);
  PointMassEnv env(grid);
  UniformSampler sampler;
  sbmp::PrmPlanner prm;
  const auto result =
      solve_on(prm, env, sampler, 7, {10, 30}, {50, 30}, 300, 10.0, 10.0, 0.05, 8);
  CHECK_FALSE(result.success);
  CHECK(result.cost == std::numeric_limits<double>::infinity());
}

TEST_CASE("prm cost equals an independent shortest-path recomputation") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PointMassEnv env(empty_grid(100, 100));
    UniformSampler sampler;
    sbmp::PrmPlanner prm;
    const auto result =
        solve_on(prm, env, sampler, seed, {10, 10}, {90, 90}, 200, 10.0, 10.0,
                 0.05, 10);
    REQUIRE(result.success);
    check_path_valid(result, env.grid_ptr(), {10, 10}, {90, 90}, 0.0);
    CHECK(result.stats.nodes_added <= result.stats.samples_drawn);

    // Independent O(V^2) Dijkstra over the finished roadmap.
    const sbmp::Roadmap* map = prm.roadmap();
    REQUIRE(map != nullptr);
    const std::size_t n = map->vertices.size();
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<bool> done(n, false);
    dist[map->start_id] = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
      std::size_t u = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (!done[i] && (u == n || dist[i] < dist[u])) u = i;
      }
      if (u == n || dist[u] == inf) break;
      done[u] = true;
      for (const auto& [v, w] : map->adjacency[u]) {
        if (dist[u] + w < dist[v]) dist[v] = dist[u] + w;
      }
    }
    REQUIRE(result.cost == dist[map->goal_id]);
  }
}

TEST_CASE("prm adjacency is symmetric with metric weights") {
  PointMassEnv env(empty_grid(80, 80));
  UniformSampler sampler;
  sbmp::PrmPlanner prm;
  solve_on(prm, env, sampler, 8, {10, 10}, {70, 70}, 150, 10.0, 10.0, 0.05, 6);
  const sbmp::Roadmap* map = prm.roadmap();
  REQUIRE(map != nullptr);
  std::size_t edges = 0;
  for (std::size_t u = 0; u < map->adjacency.size(); ++u) {
    for (const auto& [v, w] : map->adjacency[u]) {
      ++edges;
      CHECK(w == distance(map->vertices[u], map->vertices[v]));
      const auto& back = map->adjacency[v];
      const bool mirrored =
          std::any_of(back.begin(), back.end(),
                      [&](const auto& e) { return e.first == u && e.second == w; });
      CHECK(mirrored);
    }
  }
  CHECK(edges > 0);
}

TEST_CASE("identical requests produce identical results") {
  auto grid = std::make_shared<OccupancyGrid>(100, 100);
  for (int i = 20; i < 80; ++i) grid->set(i, 40, true);

  const auto run_with = [&](Planner& planner, std::uint64_t seed) {
    PointMassEnv env(grid);
    UniformSampler sampler;
    return solve_on(planner, env, sampler, seed, {10, 10}, {90, 90}, 800, 10.0);
  };

  sbmp::RrtPlanner rrt_a, rrt_b;
  sbmp::RrtStarPlanner star_a, star_b;
  sbmp::RrtConnectPlanner conn_a, conn_b;
  sbmp::PrmPlanner prm_a, prm_b;
  const std::vector<std::pair<Planner*, Planner*>> pairs{
      {&rrt_a, &rrt_b}, {&star_a, &star_b}, {&conn_a, &conn_b}, {&prm_a, &prm_b}};

  for (const auto& [first, second] : pairs) {
    const auto a = run_with(*first, 12345);
    const auto b = run_with(*second, 12345);
    CHECK(a.success == b.success);
    CHECK(a.path == b.path);
    // Bitwise-equal costs, not approximately equal.
    CHECK(a.cost == b.cost);
    CHECK(a.stats.samples_drawn == b.stats.samples_drawn);
    CHECK(a.stats.nodes_added == b.stats.nodes_added);
    CHECK(a.stats.nn_queries == b.stats.nn_queries);
    CHECK(a.stats.iterations == b.stats.iterations);
    CHECK(a.stats.checks.config_checks == b.stats.checks.config_checks);
    CHECK(a.stats.checks.motion_checks == b.stats.checks.motion_checks);
    CHECK(a.stats.checks.invalid_obstacle == b.stats.checks.invalid_obstacle);
    CHECK(a.stats.checks.invalid_connections == b.stats.checks.invalid_connections);
  }
}

TEST_CASE("planner stats stay coherent on a cluttered map") {
  auto grid = std::make_shared<OccupancyGrid>(64, 64);
  sbmp::Rng scatter(99);
  for (int i = 0; i < 400; ++i) {
    grid->set(static_cast<int>(scatter.next_u64() % 64),
              static_cast<int>(scatter.next_u64() % 64), true);
  }
  grid->set(2, 2, false);
  grid->set(60, 60, false);

  sbmp::RrtPlanner rrt;
  sbmp::RrtStarPlanner star;
  sbmp::PrmPlanner prm;
  for (Planner* planner : {static_cast<Planner*>(&rrt),
                           static_cast<Planner*>(&star),
                           static_cast<Planner*>(&prm)}) {
    PointMassEnv env(grid);
    UniformSampler sampler;
    const auto result = solve_on(*planner, env, sampler, 17, {2.5, 2.5},
                                 {60.5, 60.5}, 500, 6.0, 5.0);
    CHECK(result.stats.nodes_added <= result.stats.samples_drawn);
    CHECK(result.stats.samples_drawn <= 500);
    CHECK(result.stats.checks.config_checks > 0);
  }
}
