#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sbmp/sampler.hpp"
#include "test_util.hpp"

using sbmp::Bounds;
using sbmp::Configuration;
using sbmp::ContractViolation;
using sbmp::distance;
using sbmp::GoalBiasedSampler;
using sbmp::InformedSampler;
using sbmp::Rng;
using sbmp::SamplerContext;
using sbmp::UniformSampler;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Fixture {
  Bounds bounds;
  Configuration start;
  Configuration goal;

  SamplerContext ctx(double best_cost = kInf) const {
    return {bounds, start, goal, best_cost};
  }
};

Fixture square(double lo, double hi) {
  return {Bounds({lo, lo}, {hi, hi}), Configuration{lo, lo}, Configuration{hi, hi}};
}

}  // namespace

TEST_CASE("uniform draws stay in [lo, hi)") {
  const Fixture f = square(0.0, 1.0);
  UniformSampler sampler;
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const auto q = sampler.next(f.ctx(), rng);
    REQUIRE(q[0] >= 0.0);
    REQUIRE(q[0] < 1.0);
    REQUIRE(q[1] >= 0.0);
    REQUIRE(q[1] < 1.0);
  }
}

TEST_CASE("uniform squeezes into a sliver interval") {
  Fixture f{Bounds({5.0, 5.0}, {5.0 + 1e-9, 5.0 + 1e-9}), Configuration{5, 5},
            Configuration{5, 5}};
  UniformSampler sampler;
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    const auto q = sampler.next(f.ctx(), rng);
    REQUIRE(q[0] == Catch::Approx(5.0).margin(1e-8));
    REQUIRE(q[1] == Catch::Approx(5.0).margin(1e-8));
  }
}

TEST_CASE("uniform per-axis mean matches the distribution") {
  const Fixture f = square(0.0, 100.0);
  UniformSampler sampler;
  Rng rng(42);
  double sum_x = 0.0, sum_y = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const auto q = sampler.next(f.ctx(), rng);
    sum_x += q[0];
    sum_y += q[1];
  }
  CHECK(sum_x / 10000.0 == Catch::Approx(50.0).margin(2.0));
  CHECK(sum_y / 10000.0 == Catch::Approx(50.0).margin(2.0));
}

TEST_CASE("identical seeds give identical streams") {
  const Fixture f = square(-3.0, 9.0);
  for (auto* name : {"uniform", "goal_biased", "informed"}) {
    UniformSampler u;
    GoalBiasedSampler g(0.3);
    InformedSampler inf;
    sbmp::Sampler& sampler = std::string(name) == "uniform"
                                 ? static_cast<sbmp::Sampler&>(u)
                                 : std::string(name) == "goal_biased"
                                       ? static_cast<sbmp::Sampler&>(g)
                                       : static_cast<sbmp::Sampler&>(inf);
    Rng rng_a(77), rng_b(77);
    for (int i = 0; i < 200; ++i) {
      const auto qa = sampler.next(f.ctx(), rng_a);
      const auto qb = sampler.next(f.ctx(), rng_b);
      REQUIRE(qa == qb);
    }
  }
}

TEST_CASE("goal bias 1.0 always returns the goal") {
  const Fixture f = square(0.0, 50.0);
  GoalBiasedSampler sampler(1.0);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    REQUIRE(sampler.next(f.ctx(), rng) == f.goal);
  }
}

TEST_CASE("goal bias 0.0 matches uniform after the coin draw") {
  const Fixture f = square(0.0, 50.0);
  GoalBiasedSampler biased(0.0);
  UniformSampler uniform;
  Rng rng_a(6), rng_b(6);
  for (int i = 0; i < 200; ++i) {
    const auto qa = biased.next(f.ctx(), rng_a);
    rng_b.next_double();  // the coin the biased sampler consumed
    const auto qb = uniform.next(f.ctx(), rng_b);
    REQUIRE(qa == qb);
  }
}

TEST_CASE("goal bias frequency is binomial") {
  const Fixture f = square(0.0, 50.0);
  GoalBiasedSampler sampler(0.05);
  Rng rng(7);
  int goals = 0;
  for (int i = 0; i < 10000; ++i) {
    if (sampler.next(f.ctx(), rng) == f.goal) ++goals;
  }
  CHECK(goals >= 400);
  CHECK(goals <= 600);
}

TEST_CASE("goal bias validates p_goal") {
  CHECK_THROWS_AS(GoalBiasedSampler(-0.1), ContractViolation);
  CHECK_THROWS_AS(GoalBiasedSampler(1.1), ContractViolation);
  GoalBiasedSampler s(0.5);
  CHECK_THROWS_AS(s.set_p_goal(2.0), ContractViolation);
}

TEST_CASE("informed sampler falls back to uniform without a solution") {
  const Fixture f = square(0.0, 20.0);
  InformedSampler informed;
  UniformSampler uniform;
  Rng rng_a(8), rng_b(8);
  for (int i = 0; i < 200; ++i) {
    REQUIRE(informed.next(f.ctx(kInf), rng_a) == uniform.next(f.ctx(kInf), rng_b));
  }
}

TEST_CASE("degenerate informed ellipse collapses onto the segment") {
  Fixture f{Bounds({-20.0, -20.0}, {20.0, 20.0}), Configuration{0, 0},
            Configuration{10, 0}};
  InformedSampler sampler;
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const auto q = sampler.next(f.ctx(10.0 + 1e-9), rng);
    // Distance from the segment between the foci.
    const double t = std::clamp(q[0] / 10.0, 0.0, 1.0);
    const double off = std::hypot(q[0] - 10.0 * t, q[1]);
    REQUIRE(off <= 1e-3);
  }
}

TEST_CASE("informed samples satisfy the ellipse membership bound") {
  Fixture f{Bounds({-20.0, -20.0}, {20.0, 20.0}), Configuration{0, 0},
            Configuration{10, 0}};
  InformedSampler sampler;
  Rng rng(10);
  int inside_inner_box = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto q = sampler.next(f.ctx(12.0), rng);
    REQUIRE(distance(f.start, q) + distance(q, f.goal) <= 12.0 + 1e-9);
    if (q[0] >= 2.0 && q[0] <= 8.0 && q[1] >= -1.5 && q[1] <= 1.5) {
      ++inside_inner_box;
    }
  }
  // Uniform density oracle: the fraction landing in a box fully inside the
  // ellipse equals box area over pi*a*b.
  const double a = 12.0 / 2.0;
  const double b = std::sqrt(12.0 * 12.0 - 10.0 * 10.0) / 2.0;
  const double expected = (6.0 * 3.0) / (3.141592653589793 * a * b);
  const double observed = inside_inner_box / 10000.0;
  CHECK(observed == Catch::Approx(expected).epsilon(0.05));
}

TEST_CASE("ellipse acceptance ratio from the bounding box matches pi/4") {
  // Uniform draws over the ellipse's exact bounding box land inside the
  // ellipse at rate (pi*a*b) / (2a*2b) = pi/4.
  const double a = 6.0;
  const double b = std::sqrt(144.0 - 100.0) / 2.0;
  Fixture f{Bounds({5.0 - a, -b}, {5.0 + a, b}), Configuration{0, 0},
            Configuration{10, 0}};
  UniformSampler uniform;
  Rng rng(11);
  int accepted = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto q = uniform.next(f.ctx(), rng);
    if (distance(f.start, q) + distance(q, f.goal) <= 12.0) ++accepted;
  }
  CHECK(accepted / 10000.0 ==
        Catch::Approx(3.141592653589793 / 4.0).epsilon(0.05));
}

TEST_CASE("shrinking best cost shrinks the support") {
  Fixture f{Bounds({-20.0, -20.0}, {20.0, 20.0}), Configuration{0, 0},
            Configuration{10, 0}};
  InformedSampler sampler;
  Rng rng(12);
  int outside_smaller = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto q = sampler.next(f.ctx(11.0), rng);
    // Every c=11 sample is inside the c=12 set.
    REQUIRE(distance(f.start, q) + distance(q, f.goal) <= 12.0 + 1e-9);
  }
  for (int i = 0; i < 2000; ++i) {
    const auto q = sampler.next(f.ctx(12.0), rng);
    if (distance(f.start, q) + distance(q, f.goal) > 11.0 + 1e-9) {
      ++outside_smaller;
    }
  }
  CHECK(outside_smaller > 0);  // the larger set is strictly larger
}

TEST_CASE("informed sampler rejects impossible geometry") {
  Fixture f{Bounds({-20.0, -20.0}, {20.0, 20.0}), Configuration{0, 0},
            Configuration{10, 0}};
  InformedSampler sampler;
  Rng rng(13);
  CHECK_THROWS_AS(sampler.next(f.ctx(9.99), rng), ContractViolation);
}

TEST_CASE("informed sampler gives up when bounds exclude the ellipse") {
  // Bounds far away from the informed set: every draw lands out of bounds.
  Fixture f{Bounds({100.0, 100.0}, {101.0, 101.0}), Configuration{0, 0},
            Configuration{10, 0}};
  InformedSampler sampler;
  Rng rng(14);
  CHECK_THROWS_AS(sampler.next(f.ctx(12.0), rng), sbmp::SamplerExhausted);
}

TEST_CASE("report bookkeeping") {
  const Fixture f = square(0.0, 10.0);
  UniformSampler sampler;
  Rng rng(15);

  SECTION("next then report in bulk") {
    for (int i = 0; i < 5; ++i) sampler.next(f.ctx(), rng);
    for (int i = 0; i < 5; ++i) sampler.report(i % 2 == 0);
    CHECK(sampler.next_count() == 5);
    CHECK(sampler.report_count() == 5);
    CHECK(sampler.accepted_count() == 3);
  }

  SECTION("no reports") {
    sampler.next(f.ctx(), rng);
    CHECK(sampler.report_count() == 0);
  }

  SECTION("interleaved") {
    for (int i = 0; i < 1000; ++i) {
      sampler.next(f.ctx(), rng);
      sampler.report(true);
    }
    CHECK(sampler.next_count() == sampler.report_count());
  }
}

TEST_CASE("all samplers stay inside bounds") {
  sbmp::Rng meta(16);
  UniformSampler uniform;
  GoalBiasedSampler biased(0.1);
  InformedSampler informed;
  for (int trial = 0; trial < 100; ++trial) {
    const double lo = meta.uniform(-50.0, 0.0);
    const double hi = lo + meta.uniform(1.0, 50.0);
    const std::size_t dim = 2 + (meta.next_u64() % 3);
    Bounds bounds(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
    const auto start = test_util::random_config(meta, dim, lo, hi);
    const auto goal = test_util::random_config(meta, dim, lo, hi);
    const double best = distance(start, goal) * 1.2 + 0.1;
    Rng rng(trial);
    for (int i = 0; i < 100; ++i) {
      const SamplerContext ctx{bounds, start, goal, kInf};
      const SamplerContext informed_ctx{bounds, start, goal, best};
      REQUIRE(bounds.contains(uniform.next(ctx, rng)));
      REQUIRE(bounds.contains(biased.next(ctx, rng)));
      REQUIRE(bounds.contains(informed.next(informed_ctx, rng)));
    }
  }
}
