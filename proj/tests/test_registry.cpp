#include <catch_amalgamated.hpp>

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "sbmp/registry.hpp"

using sbmp::Registry;
using sbmp::RegistrationError;
using sbmp::UnknownNameError;

TEST_CASE("fresh registry lists the built-ins sorted") {
  const auto registry = Registry::with_builtins();
  CHECK(registry.list_planners() ==
        std::vector<std::string>{"prm", "rrt", "rrt_connect", "rrt_star"});
  CHECK(registry.list_samplers() ==
        std::vector<std::string>{"goal_biased", "informed", "uniform"});
}

TEST_CASE("every listed name is creatable and vice versa") {
  const auto registry = Registry::with_builtins();
  for (const auto& name : registry.list_planners()) {
    auto planner = registry.create_planner(name);
    REQUIRE(planner != nullptr);
    CHECK(planner->name() == name);
  }
  for (const auto& name : registry.list_samplers()) {
    auto sampler = registry.create_sampler(name);
    REQUIRE(sampler != nullptr);
    CHECK(sampler->name() == name);
  }
}

TEST_CASE("created instances are fresh and unshared") {
  const auto registry = Registry::with_builtins();
  auto a = registry.create_sampler("uniform");
  auto b = registry.create_sampler("uniform");
  REQUIRE(a.get() != b.get());
  a->report(true);
  CHECK(a->report_count() == 1);
  CHECK(b->report_count() == 0);
}

TEST_CASE("registering and creating a plugin planner") {
  auto registry = Registry::with_builtins();
  registry.register_planner("my_rrt",
                            [] { return std::make_unique<sbmp::RrtPlanner>(); });
  CHECK(registry.create_planner("my_rrt") != nullptr);

  const auto names = registry.list_planners();
  CHECK(names == std::vector<std::string>{"my_rrt", "prm", "rrt", "rrt_connect",
                                          "rrt_star"});
}

TEST_CASE("a name registered after z sorts last") {
  auto registry = Registry::with_builtins();
  registry.register_planner("zeta",
                            [] { return std::make_unique<sbmp::RrtPlanner>(); });
  CHECK(registry.list_planners().back() == "zeta");
}

TEST_CASE("duplicate registration conflicts instead of overwriting") {
  auto registry = Registry::with_builtins();
  CHECK_THROWS_AS(registry.register_planner(
                      "rrt", [] { return std::make_unique<sbmp::RrtPlanner>(); }),
                  RegistrationError);
  CHECK_THROWS_AS(
      registry.register_sampler(
          "uniform", [] { return std::make_unique<sbmp::UniformSampler>(); }),
      RegistrationError);
}

TEST_CASE("malformed names are rejected") {
  auto registry = Registry::with_builtins();
  for (const std::string bad : {"My-RRT", "RRT", "9lives", "", "with space"}) {
    CHECK_THROWS_AS(registry.register_planner(
                        bad, [] { return std::make_unique<sbmp::RrtPlanner>(); }),
                    RegistrationError);
  }
}

TEST_CASE("unknown names report the available set") {
  const auto registry = Registry::with_builtins();
  try {
    registry.create_planner("does_not_exist");
    FAIL("expected UnknownNameError");
  } catch (const UnknownNameError& e) {
    const std::string msg = e.what();
    CHECK(msg ==
          "unknown planner 'does_not_exist'; available: prm, rrt, rrt_connect, "
          "rrt_star");
  }
  try {
    registry.create_sampler("rtr");
    FAIL("expected UnknownNameError");
  } catch (const UnknownNameError& e) {
    const std::string msg = e.what();
    CHECK(msg == "unknown sampler 'rtr'; available: goal_biased, informed, uniform");
  }
}

TEST_CASE("listing grows monotonically") {
  auto registry = Registry::with_builtins();
  auto before = registry.list_planners();
  registry.register_planner("aardvark",
                            [] { return std::make_unique<sbmp::PrmPlanner>(); });
  auto after = registry.list_planners();
  CHECK(after.size() == before.size() + 1);
  for (const auto& name : before) {
    CHECK(std::find(after.begin(), after.end(), name) != after.end());
  }
}

TEST_CASE("default registry is shared and prepopulated") {
  auto& a = sbmp::default_registry();
  auto& b = sbmp::default_registry();
  CHECK(&a == &b);
  CHECK(a.has_planner("rrt"));
  CHECK(a.has_sampler("informed"));
}
