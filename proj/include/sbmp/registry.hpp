#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sbmp/error.hpp"
#include "sbmp/planner.hpp"
#include "sbmp/planners/prm.hpp"
#include "sbmp/planners/rrt.hpp"
#include "sbmp/planners/rrt_connect.hpp"
#include "sbmp/planners/rrt_star.hpp"
#include "sbmp/sampler.hpp"

namespace sbmp {

/// Name-keyed factories for planners and samplers. Select any implementation
/// by string — config files and CLI flags go through here, so a new planner
/// is one register call away from every framework feature. Populated during
/// startup, read-only afterwards; names are lowercase [a-z][a-z0-9_]*.
class Registry {
 public:
  using PlannerFactory = std::function<std::unique_ptr<Planner>()>;
  using SamplerFactory = std::function<std::unique_ptr<Sampler>()>;

  void register_planner(const std::string& name, PlannerFactory factory) {
    add(planners_, "planner", name, std::move(factory));
  }

  void register_sampler(const std::string& name, SamplerFactory factory) {
    add(samplers_, "sampler", name, std::move(factory));
  }

  std::unique_ptr<Planner> create_planner(const std::string& name) const {
    return create(planners_, "planner", name);
  }

  std::unique_ptr<Sampler> create_sampler(const std::string& name) const {
    return create(samplers_, "sampler", name);
  }

  std::vector<std::string> list_planners() const { return keys(planners_); }
  std::vector<std::string> list_samplers() const { return keys(samplers_); }

  bool has_planner(const std::string& name) const { return planners_.count(name); }
  bool has_sampler(const std::string& name) const { return samplers_.count(name); }

  std::string available_planners() const { return joined_keys(planners_); }
  std::string available_samplers() const { return joined_keys(samplers_); }

  /// A registry preloaded with the built-in planners and samplers.
  static Registry with_builtins() {
    Registry r;
    r.register_planner("rrt", [] { return std::make_unique<RrtPlanner>(); });
    r.register_planner("rrt_star", [] { return std::make_unique<RrtStarPlanner>(); });
    r.register_planner("rrt_connect",
                       [] { return std::make_unique<RrtConnectPlanner>(); });
    r.register_planner("prm", [] { return std::make_unique<PrmPlanner>(); });
    r.register_sampler("uniform", [] { return std::make_unique<UniformSampler>(); });
    r.register_sampler("goal_biased",
                       [] { return std::make_unique<GoalBiasedSampler>(); });
    r.register_sampler("informed", [] { return std::make_unique<InformedSampler>(); });
    return r;
  }

 private:
  static bool valid_name(const std::string& name) {
    if (name.empty() || name[0] < 'a' || name[0] > 'z') return false;
    for (char c : name) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
      if (!ok) return false;
    }
    return true;
  }

  template <typename Map, typename Factory>
  static void add(Map& map, const char* kind, const std::string& name,
                  Factory factory) {
    if (!valid_name(name)) {
      throw RegistrationError(std::string(kind) + " name '" + name +
                              "' is invalid; expected [a-z][a-z0-9_]*");
    }
    if (map.count(name)) {
      throw RegistrationError(std::string(kind) + " '" + name +
                              "' is already registered");
    }
    map.emplace(name, std::move(factory));
  }

  template <typename Map>
  static typename Map::mapped_type::result_type create(const Map& map,
                                                       const char* kind,
                                                       const std::string& name) {
    const auto it = map.find(name);
    if (it == map.end()) {
      throw UnknownNameError("unknown " + std::string(kind) + " '" + name +
                             "'; available: " + joined_keys(map));
    }
    return it->second();
  }

  template <typename Map>
  static std::vector<std::string> keys(const Map& map) {
    std::vector<std::string> out;
    out.reserve(map.size());
    for (const auto& [name, factory] : map) out.push_back(name);
    return out;  // std::map iterates sorted
  }

  template <typename Map>
  static std::string joined_keys(const Map& map) {
    std::string out;
    for (const auto& [name, factory] : map) {
      if (!out.empty()) out += ", ";
      out += name;
    }
    return out;
  }

  std::map<std::string, PlannerFactory> planners_;
  std::map<std::string, SamplerFactory> samplers_;
};

/// Process-wide registry with the built-ins; plugins registered here become
/// visible to the CLI and config parsing.
inline Registry& default_registry() {
  static Registry registry = Registry::with_builtins();
  return registry;
}

}  // namespace sbmp
