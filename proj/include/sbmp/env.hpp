#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "sbmp/cspace.hpp"
#include "sbmp/error.hpp"
#include "sbmp/grid.hpp"
#include "sbmp/raster.hpp"

namespace sbmp {

/// Collision-checking counters, the raw material for benchmark stats.
struct CheckStats {
  std::uint64_t config_checks = 0;
  std::uint64_t motion_checks = 0;
  std::uint64_t invalid_obstacle = 0;     // configurations rejected in collision
  std::uint64_t invalid_connections = 0;  // motions rejected
};

inline CheckStats operator-(const CheckStats& a, const CheckStats& b) {
  return {a.config_checks - b.config_checks, a.motion_checks - b.motion_checks,
          a.invalid_obstacle - b.invalid_obstacle,
          a.invalid_connections - b.invalid_connections};
}

/// Abstract environment: a concrete backend supplies the C-Space geometry
/// (dimension, bounds, motion resolution) and the raw validity predicate;
/// this base owns discretized motion checking and the counters.
///
/// An instance carries mutable counters and belongs to a single plan run at a
/// time. Parallel runs construct independent instances over a shared grid.
class EnvModel {
 public:
  virtual ~EnvModel() = default;

  virtual std::size_t dim() const = 0;
  virtual const Bounds& bounds() const = 0;

  /// Step size delta used to discretize motions, in C-Space units.
  virtual double motion_resolution() const = 0;

  bool is_free_config(const Configuration& q) {
    require_dim(q);
    ++stats_.config_checks;
    const bool free = config_free(q);
    if (!free) ++stats_.invalid_obstacle;
    return free;
  }

  /// True iff every sample interpolate(a,b,k/m) for k=0..m is free, with
  /// m = ceil(distance/delta), m >= 1. The endpoints are canonicalized by
  /// lexicographic order before sampling so the check is exactly symmetric
  /// in its arguments.
  bool is_free_motion(const Configuration& a, const Configuration& b) {
    require_dim(a);
    require_dim(b);
    ++stats_.motion_checks;
    const bool swapped = lex_less(b, a);
    const Configuration& lo = swapped ? b : a;
    const Configuration& hi = swapped ? a : b;
    const std::size_t m = motion_steps(lo, hi);
    bool free = true;
    for (std::size_t k = 0; k <= m; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(m);
      if (!config_free(interpolate(lo, hi, t))) {
        free = false;
        break;
      }
    }
    if (!free) ++stats_.invalid_connections;
    return free;
  }

  std::size_t motion_steps(const Configuration& a, const Configuration& b) const {
    const double len = distance(a, b);
    const double steps = std::ceil(len / motion_resolution());
    return steps < 1.0 ? 1 : static_cast<std::size_t>(steps);
  }

  const CheckStats& stats() const { return stats_; }

 protected:
  virtual bool config_free(const Configuration& q) const = 0;

  void require_dim(const Configuration& q) const {
    if (q.size() != dim()) {
      throw ContractViolation("environment expects dimension " +
                              std::to_string(dim()) + ", got " +
                              std::to_string(q.size()));
    }
  }

  static bool lex_less(const Configuration& a, const Configuration& b) {
    return a.coords() < b.coords();
  }

 private:
  CheckStats stats_;
};

/// Point robot over an occupancy grid: a configuration (x,y) in pixels is
/// free iff its containing pixel is unoccupied.
class PointMassEnv final : public EnvModel {
 public:
  explicit PointMassEnv(std::shared_ptr<const OccupancyGrid> grid)
      : grid_(std::move(grid)),
        bounds_({0.0, 0.0},
                {static_cast<double>(grid_->width()),
                 static_cast<double>(grid_->height())}) {}

  std::size_t dim() const override { return 2; }
  const Bounds& bounds() const override { return bounds_; }
  double motion_resolution() const override { return 1.0; }  // one pixel

  const OccupancyGrid& grid() const { return *grid_; }
  std::shared_ptr<const OccupancyGrid> grid_ptr() const { return grid_; }

 protected:
  bool config_free(const Configuration& q) const override {
    return !cell_occupied(q[0], q[1]);
  }

 private:
  bool cell_occupied(double x, double y) const {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    if (fx < 0.0 || fy < 0.0 || fx >= grid_->width() || fy >= grid_->height()) {
      return true;
    }
    return grid_->is_occupied(static_cast<int>(fx), static_cast<int>(fy));
  }

  std::shared_ptr<const OccupancyGrid> grid_;
  Bounds bounds_;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Chain forward kinematics in image coordinates (y grows downward).
/// Returns links+1 points starting at the base; joint i rotates by the
/// cumulative angle q[0]+...+q[i].
inline std::vector<Vec2> forward_kinematics(Vec2 base,
                                            const std::vector<double>& link_lengths,
                                            const Configuration& q) {
  if (q.size() != link_lengths.size()) {
    throw ContractViolation("forward_kinematics: got " + std::to_string(q.size()) +
                            " joint angles for " +
                            std::to_string(link_lengths.size()) + " links");
  }
  std::vector<Vec2> points;
  points.reserve(q.size() + 1);
  points.push_back(base);
  double theta = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    theta += q[i];
    const Vec2& prev = points.back();
    points.push_back({prev.x + link_lengths[i] * std::cos(theta),
                      prev.y + link_lengths[i] * std::sin(theta)});
  }
  return points;
}

/// Planar fixed-base arm with n >= 2 zero-thickness links over an occupancy
/// grid. A configuration (one joint angle per link, radians in [-pi, pi]) is
/// free iff every link segment rasterizes onto unoccupied pixels only.
class PlanarArmEnv final : public EnvModel {
 public:
  PlanarArmEnv(std::shared_ptr<const OccupancyGrid> grid, Vec2 base,
               std::vector<double> link_lengths)
      : grid_(std::move(grid)),
        base_(base),
        link_lengths_(std::move(link_lengths)),
        bounds_(make_bounds(link_lengths_.size())) {
    if (link_lengths_.size() < 2) {
      throw ContractViolation("planar arm needs at least 2 links");
    }
    total_length_ = 0.0;
    for (double len : link_lengths_) {
      if (!(len > 0.0)) {
        throw ContractViolation("link lengths must be positive");
      }
      total_length_ += len;
    }
    if (base_.x < 0.0 || base_.y < 0.0 || base_.x >= grid_->width() ||
        base_.y >= grid_->height()) {
      throw ContractViolation("arm base must lie inside the grid");
    }
  }

  std::size_t dim() const override { return link_lengths_.size(); }
  const Bounds& bounds() const override { return bounds_; }

  // A joint-space step of delta moves any point of the arm at most
  // delta * sum(L) in the workspace; this delta keeps that bound at one pixel.
  double motion_resolution() const override { return 1.0 / total_length_; }

  const OccupancyGrid& grid() const { return *grid_; }
  std::shared_ptr<const OccupancyGrid> grid_ptr() const { return grid_; }
  Vec2 base() const { return base_; }
  const std::vector<double>& link_lengths() const { return link_lengths_; }

  std::vector<Vec2> forward_kinematics(const Configuration& q) const {
    require_dim(q);
    return sbmp::forward_kinematics(base_, link_lengths_, q);
  }

 protected:
  bool config_free(const Configuration& q) const override {
    const auto points = sbmp::forward_kinematics(base_, link_lengths_, q);
    for (std::size_t i = 1; i < points.size(); ++i) {
      const bool clear = walk_supercover(
          points[i - 1].x, points[i - 1].y, points[i].x, points[i].y,
          [this](long cx, long cy) {
            if (cx < 0 || cy < 0 || cx >= grid_->width() || cy >= grid_->height()) {
              return false;
            }
            return !grid_->is_occupied(static_cast<int>(cx), static_cast<int>(cy));
          });
      if (!clear) return false;
    }
    return true;
  }

 private:
  static Bounds make_bounds(std::size_t dims) {
    constexpr double pi = 3.141592653589793238462643383279502884;
    if (dims < 2) dims = 2;  // real validation happens in the constructor
    return Bounds(std::vector<double>(dims, -pi), std::vector<double>(dims, pi));
  }

  std::shared_ptr<const OccupancyGrid> grid_;
  Vec2 base_;
  std::vector<double> link_lengths_;
  Bounds bounds_;
  double total_length_ = 0.0;
};

}  // namespace sbmp
