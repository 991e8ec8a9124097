#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

#include "sbmp/cspace.hpp"
#include "sbmp/error.hpp"
#include "sbmp/rng.hpp"

namespace sbmp {

/// The sampler's view of planner state: where to sample, what the query is,
/// and the best solution cost found so far (+inf until one exists).
struct SamplerContext {
  const Bounds& bounds;
  const Configuration& start;
  const Configuration& goal;
  double best_cost = std::numeric_limits<double>::infinity();
};

/// Numeric knobs a sampler may pick up from a plan configuration.
struct SamplerSettings {
  double p_goal = 0.05;
};

/// Abstract sampler. Concrete samplers implement do_next(); next() wraps it
/// with call counting. report() is the feedback hook a planner invokes once
/// per sample after that sample's fate (kept or rejected) is known — the
/// built-ins just count, but adaptive samplers can plug in here without any
/// planner changes.
class Sampler {
 public:
  virtual ~Sampler() = default;

  Configuration next(const SamplerContext& ctx, Rng& rng) {
    ++next_count_;
    return do_next(ctx, rng);
  }

  virtual void report(bool accepted) {
    ++report_count_;
    if (accepted) ++accepted_count_;
  }

  virtual void configure(const SamplerSettings&) {}
  virtual std::string_view name() const = 0;

  std::uint64_t next_count() const { return next_count_; }
  std::uint64_t report_count() const { return report_count_; }
  std::uint64_t accepted_count() const { return accepted_count_; }

 protected:
  virtual Configuration do_next(const SamplerContext& ctx, Rng& rng) = 0;

  static Configuration uniform_in_bounds(const Bounds& bounds, Rng& rng) {
    std::vector<double> coords(bounds.dim());
    for (std::size_t i = 0; i < bounds.dim(); ++i) {
      coords[i] = rng.uniform(bounds.lo(i), bounds.hi(i));
    }
    return Configuration(std::move(coords));
  }

 private:
  std::uint64_t next_count_ = 0;
  std::uint64_t report_count_ = 0;
  std::uint64_t accepted_count_ = 0;
};

/// Independent uniform draw per coordinate, [lo_i, hi_i). Consumes exactly
/// dim draws per call.
class UniformSampler final : public Sampler {
 public:
  std::string_view name() const override { return "uniform"; }

 protected:
  Configuration do_next(const SamplerContext& ctx, Rng& rng) override {
    return uniform_in_bounds(ctx.bounds, rng);
  }
};

/// Returns the goal with probability p_goal, otherwise a uniform draw. The
/// bias coin always consumes exactly one draw before any coordinate draws,
/// so streams stay aligned across p_goal values.
class GoalBiasedSampler final : public Sampler {
 public:
  explicit GoalBiasedSampler(double p_goal = 0.05) { set_p_goal(p_goal); }

  void set_p_goal(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ContractViolation("p_goal must lie in [0,1]");
    }
    p_goal_ = p;
  }
  double p_goal() const { return p_goal_; }

  void configure(const SamplerSettings& s) override { set_p_goal(s.p_goal); }
  std::string_view name() const override { return "goal_biased"; }

 protected:
  Configuration do_next(const SamplerContext& ctx, Rng& rng) override {
    if (rng.next_double() < p_goal_) return ctx.goal;
    return uniform_in_bounds(ctx.bounds, rng);
  }

 private:
  double p_goal_ = 0.05;
};

/// Samples the informed set: the prolate hyperspheroid with foci start/goal
/// whose transverse diameter is the best known solution cost. Any solution
/// better than the current best must lie inside it, so once a first solution
/// exists nothing outside is worth drawing. Falls back to uniform while
/// best_cost is infinite.
///
/// Mechanics: uniform point in the unit d-ball (normalized Gaussian scaled by
/// U^(1/d)), stretched by the ellipsoid semi-axes, first axis rotated onto
/// goal-start, translated to the foci midpoint. Out-of-bounds points are
/// rejected and redrawn.
class InformedSampler final : public Sampler {
 public:
  static constexpr int kMaxRejections = 1000;

  std::string_view name() const override { return "informed"; }

 protected:
  Configuration do_next(const SamplerContext& ctx, Rng& rng) override {
    if (!std::isfinite(ctx.best_cost)) {
      return uniform_in_bounds(ctx.bounds, rng);
    }
    const std::size_t d = ctx.bounds.dim();
    const double c_min = distance(ctx.start, ctx.goal);
    const double c_best = ctx.best_cost;
    if (c_best < c_min) {
      throw ContractViolation("informed sampler: best_cost below start-goal distance");
    }

    const double transverse = c_best / 2.0;
    const double conjugate = std::sqrt(c_best * c_best - c_min * c_min) / 2.0;

    // Householder vector mapping e1 onto the unit transverse axis. A
    // reflection rather than a rotation, which the symmetric ellipsoid
    // cannot tell apart. Near-identity and zero-length cases skip it.
    std::vector<double> axis(d, 0.0);
    bool reflect = false;
    if (c_min > 0.0) {
      for (std::size_t i = 0; i < d; ++i) {
        axis[i] = (ctx.goal[i] - ctx.start[i]) / c_min;
      }
      axis[0] -= 1.0;  // axis := a - e1
      double norm_sq = 0.0;
      for (double v : axis) norm_sq += v * v;
      if (norm_sq > 1e-24) {
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (double& v : axis) v *= inv;
        reflect = true;
      }
    }

    for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
      std::vector<double> p = unit_ball(d, rng);
      p[0] *= transverse;
      for (std::size_t i = 1; i < d; ++i) p[i] *= conjugate;
      if (reflect) {
        double dot = 0.0;
        for (std::size_t i = 0; i < d; ++i) dot += axis[i] * p[i];
        for (std::size_t i = 0; i < d; ++i) p[i] -= 2.0 * dot * axis[i];
      }
      for (std::size_t i = 0; i < d; ++i) {
        p[i] += (ctx.start[i] + ctx.goal[i]) / 2.0;
      }
      Configuration q(std::move(p));
      if (ctx.bounds.contains(q)) return q;
    }
    throw SamplerExhausted(
        "informed sampler: 1000 consecutive samples fell outside bounds");
  }

 private:
  // Uniform in the unit ball: Gaussian direction, radius U^(1/d). Consumes
  // 2*ceil(d/2) + 1 draws per attempt (plus a full redraw of the Gaussians
  // in the measure-zero case of a zero vector).
  static std::vector<double> unit_ball(std::size_t d, Rng& rng) {
    std::vector<double> g(d);
    double norm_sq = 0.0;
    do {
      norm_sq = 0.0;
      for (std::size_t i = 0; i < d; i += 2) {
        const auto [z0, z1] = rng.gaussian_pair();
        g[i] = z0;
        if (i + 1 < d) g[i + 1] = z1;
      }
      for (double v : g) norm_sq += v * v;
    } while (norm_sq == 0.0);
    const double radius = std::pow(rng.next_double(), 1.0 / static_cast<double>(d));
    const double scale = radius / std::sqrt(norm_sq);
    for (double& v : g) v *= scale;
    return g;
  }
};

}  // namespace sbmp
