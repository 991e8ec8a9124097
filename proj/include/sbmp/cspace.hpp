#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "sbmp/error.hpp"

namespace sbmp {

/// A point in configuration space: pixels for the point-mass environment,
/// joint angles in radians for the arm. Immutable after construction; all
/// coordinates are finite 64-bit floats.
class Configuration {
 public:
  Configuration() = default;

  explicit Configuration(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
      throw ContractViolation("configuration must have at least one coordinate");
    }
    for (double c : coords_) {
      if (!std::isfinite(c)) {
        throw ContractViolation("configuration coordinates must be finite");
      }
    }
  }

  Configuration(std::initializer_list<double> coords)
      : Configuration(std::vector<double>(coords)) {}

  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const { return coords_; }

  bool empty() const { return coords_.empty(); }

  // Sameness is exact coordinate equality; nothing in the framework relies on
  // approximate comparisons.
  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.coords_ == b.coords_;
  }
  friend bool operator!=(const Configuration& a, const Configuration& b) {
    return !(a == b);
  }

 private:
  std::vector<double> coords_;
};

/// Axis-aligned sampling domain: one closed interval [lo, hi] per dimension.
class Bounds {
 public:
  Bounds(std::vector<double> lo, std::vector<double> hi)
      : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.size() != hi_.size() || lo_.empty()) {
      throw ContractViolation("bounds lo/hi must be nonempty and equally sized");
    }
    for (std::size_t i = 0; i < lo_.size(); ++i) {
      if (!std::isfinite(lo_[i]) || !std::isfinite(hi_[i]) || !(lo_[i] < hi_[i])) {
        throw ContractViolation("bounds require finite lo < hi in dimension " +
                                std::to_string(i));
      }
    }
  }

  std::size_t dim() const { return lo_.size(); }
  double lo(std::size_t i) const { return lo_[i]; }
  double hi(std::size_t i) const { return hi_[i]; }

  bool contains(const Configuration& q) const {
    if (q.size() != dim()) return false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (q[i] < lo_[i] || q[i] > hi_[i]) return false;
    }
    return true;
  }

 private:
  std::vector<double> lo_;
  std::vector<double> hi_;
};

namespace detail {
inline void require_same_dim(const Configuration& a, const Configuration& b,
                             const char* op) {
  if (a.size() != b.size()) {
    throw ContractViolation(std::string(op) + ": dimension mismatch (" +
                            std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()) + ")");
  }
}
}  // namespace detail

/// Squared Euclidean distance, accumulated in index order. Every distance in
/// the framework funnels through this one loop so that exact-comparison
/// consumers (nearest-neighbor tie-breaking) see identical values.
inline double squared_distance(const Configuration& a, const Configuration& b) {
  detail::require_same_dim(a, b, "squared_distance");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

/// Euclidean metric on C-Space.
inline double distance(const Configuration& a, const Configuration& b) {
  return std::sqrt(squared_distance(a, b));
}

/// Straight-line interpolation a + t*(b-a). The endpoints come back exact:
/// t=0 returns a and t=1 returns b verbatim.
inline Configuration interpolate(const Configuration& a, const Configuration& b,
                                 double t) {
  detail::require_same_dim(a, b, "interpolate");
  if (t < 0.0 || t > 1.0) {
    throw ContractViolation("interpolate: t must lie in [0,1], got " +
                            std::to_string(t));
  }
  if (t == 0.0) return a;
  if (t == 1.0) return b;
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i] = a[i] + t * (b[i] - a[i]);
  }
  return Configuration(std::move(out));
}

/// Bounded extension toward `to`: returns `to` verbatim when it is within
/// `eps` of `from`, otherwise the point exactly `eps` along the segment.
inline Configuration steer(const Configuration& from, const Configuration& to,
                           double eps) {
  detail::require_same_dim(from, to, "steer");
  if (!(eps > 0.0)) {
    throw ContractViolation("steer: eps must be positive");
  }
  const double d = distance(from, to);
  if (d <= eps) return to;
  const double scale = eps / d;
  std::vector<double> out(from.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    out[i] = from[i] + scale * (to[i] - from[i]);
  }
  return Configuration(std::move(out));
}

/// Total length of a piecewise-linear path.
inline double path_cost(const std::vector<Configuration>& path) {
  double cost = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    cost += distance(path[i - 1], path[i]);
  }
  return cost;
}

}  // namespace sbmp
