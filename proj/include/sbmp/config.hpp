#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sbmp/error.hpp"
#include "sbmp/registry.hpp"

namespace sbmp {

enum class EnvKind { point, arm };

/// One fully-specified run, straight out of a config file with the
/// documented defaults filled in.
struct PlanConfig {
  std::string id = "plan";
  std::string map_path;
  EnvKind env_kind = EnvKind::point;
  std::vector<double> arm_base;     // x, y (arm only)
  std::vector<double> arm_links;    // link lengths, pixels (arm only)
  std::string planner;
  std::string sampler = "uniform";
  std::vector<double> start;
  std::vector<double> goal;
  std::uint64_t seed = 0;
  std::size_t max_nodes = 2000;
  double eps = 10.0;
  double goal_radius = 10.0;
  double p_goal = 0.05;
  std::size_t prm_k = 10;
  double rewire_multiplier = 6.0;
  std::string out_path;  // optional JSON record destination
  std::string svg_path;  // optional rendering destination
};

/// A cross product of run templates with planner lists and seed sets.
struct BenchmarkTemplate {
  PlanConfig base;  // planner/seed fields unused; filled per expanded run
  std::vector<std::string> planners;
  std::vector<std::uint64_t> seeds;
};

struct BenchmarkSpec {
  std::vector<BenchmarkTemplate> templates;

  /// Canonical run order: template order x planner order x ascending seed.
  std::vector<PlanConfig> expand() const {
    std::vector<PlanConfig> runs;
    for (const BenchmarkTemplate& tpl : templates) {
      for (const std::string& planner : tpl.planners) {
        for (std::uint64_t seed : tpl.seeds) {
          PlanConfig cfg = tpl.base;
          cfg.planner = planner;
          cfg.seed = seed;
          runs.push_back(std::move(cfg));
        }
      }
    }
    return runs;
  }
};

using ParsedConfig = std::variant<PlanConfig, BenchmarkSpec>;

namespace config_detail {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& reason) {
  throw ConfigError("config field '" + path + "': " + reason);
}

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      throw ConfigError("unknown key '" + (path.empty() ? key : path + "." + key) +
                        "' in config");
    }
  }
}

inline std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

inline double as_double(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(path, "must be finite");
  return d;
}

inline std::uint64_t as_u64(const json& v, const std::string& path) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  fail(path, "expected a non-negative integer");
}

inline std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

inline std::vector<double> as_double_array(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) fail(path, "expected a nonempty array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(as_double(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

inline void apply_common_fields(const json& obj, const std::string& path,
                                PlanConfig& cfg) {
  if (obj.contains("id")) cfg.id = as_string(obj["id"], join(path, "id"));
  if (obj.contains("map")) cfg.map_path = as_string(obj["map"], join(path, "map"));
  if (obj.contains("env")) {
    const std::string kind = as_string(obj["env"], join(path, "env"));
    if (kind == "point") {
      cfg.env_kind = EnvKind::point;
    } else if (kind == "arm") {
      cfg.env_kind = EnvKind::arm;
    } else {
      fail(join(path, "env"), "must be \"point\" or \"arm\"");
    }
  }
  if (obj.contains("base")) {
    cfg.arm_base = as_double_array(obj["base"], join(path, "base"));
  }
  if (obj.contains("link_lengths")) {
    cfg.arm_links = as_double_array(obj["link_lengths"], join(path, "link_lengths"));
  }
  if (obj.contains("sampler")) {
    cfg.sampler = as_string(obj["sampler"], join(path, "sampler"));
  }
  if (obj.contains("start")) {
    cfg.start = as_double_array(obj["start"], join(path, "start"));
  }
  if (obj.contains("goal")) {
    cfg.goal = as_double_array(obj["goal"], join(path, "goal"));
  }
  if (obj.contains("max_nodes")) {
    cfg.max_nodes =
        static_cast<std::size_t>(as_u64(obj["max_nodes"], join(path, "max_nodes")));
  }
  if (obj.contains("eps")) cfg.eps = as_double(obj["eps"], join(path, "eps"));
  if (obj.contains("goal_radius")) {
    cfg.goal_radius = as_double(obj["goal_radius"], join(path, "goal_radius"));
  }
  if (obj.contains("p_goal")) {
    cfg.p_goal = as_double(obj["p_goal"], join(path, "p_goal"));
  }
  if (obj.contains("prm_k")) {
    cfg.prm_k = static_cast<std::size_t>(as_u64(obj["prm_k"], join(path, "prm_k")));
  }
  if (obj.contains("rewire_multiplier")) {
    cfg.rewire_multiplier =
        as_double(obj["rewire_multiplier"], join(path, "rewire_multiplier"));
  }
  if (obj.contains("out")) cfg.out_path = as_string(obj["out"], join(path, "out"));
  if (obj.contains("svg")) cfg.svg_path = as_string(obj["svg"], join(path, "svg"));
}

inline void validate_config(const PlanConfig& cfg, const std::string& path,
                            const Registry& registry, bool check_planner) {
  if (cfg.map_path.empty()) fail(join(path, "map"), "is required");
  if (cfg.start.empty()) fail(join(path, "start"), "is required");
  if (cfg.goal.empty()) fail(join(path, "goal"), "is required");
  if (check_planner) {
    if (cfg.planner.empty()) fail(join(path, "planner"), "is required");
    if (!registry.has_planner(cfg.planner)) {
      throw UnknownNameError("unknown planner '" + cfg.planner +
                             "'; available: " + registry.available_planners());
    }
  }
  if (!registry.has_sampler(cfg.sampler)) {
    throw UnknownNameError("unknown sampler '" + cfg.sampler +
                           "'; available: " + registry.available_samplers());
  }

  std::size_t expected_dim = 2;
  if (cfg.env_kind == EnvKind::arm) {
    if (cfg.arm_base.size() != 2) {
      fail(join(path, "base"), "arm environments need base = [x, y]");
    }
    if (cfg.arm_links.size() < 2) {
      fail(join(path, "link_lengths"), "arm environments need at least 2 links");
    }
    for (double len : cfg.arm_links) {
      if (!(len > 0.0)) fail(join(path, "link_lengths"), "lengths must be positive");
    }
    expected_dim = cfg.arm_links.size();
  } else {
    if (!cfg.arm_base.empty()) {
      fail(join(path, "base"), "only valid for arm environments");
    }
    if (!cfg.arm_links.empty()) {
      fail(join(path, "link_lengths"), "only valid for arm environments");
    }
  }
  if (cfg.start.size() != expected_dim) {
    fail(join(path, "start"),
         "expected dimension " + std::to_string(expected_dim) + ", got " +
             std::to_string(cfg.start.size()));
  }
  if (cfg.goal.size() != expected_dim) {
    fail(join(path, "goal"),
         "expected dimension " + std::to_string(expected_dim) + ", got " +
             std::to_string(cfg.goal.size()));
  }
  if (cfg.max_nodes < 1) fail(join(path, "max_nodes"), "must be at least 1");
  if (!(cfg.eps > 0.0)) fail(join(path, "eps"), "must be positive");
  if (cfg.goal_radius < 0.0) fail(join(path, "goal_radius"), "must be non-negative");
  if (!(cfg.p_goal >= 0.0 && cfg.p_goal <= 1.0)) {
    fail(join(path, "p_goal"), "must lie in [0,1]");
  }
  if (cfg.prm_k < 1) fail(join(path, "prm_k"), "must be at least 1");
  if (!(cfg.rewire_multiplier > 0.0)) {
    fail(join(path, "rewire_multiplier"), "must be positive");
  }
}

inline const std::set<std::string>& common_keys() {
  static const std::set<std::string> keys = {
      "id",        "map",        "env",       "base",
      "link_lengths", "sampler", "start",     "goal",
      "max_nodes", "eps",        "goal_radius", "p_goal",
      "prm_k",     "rewire_multiplier", "out", "svg"};
  return keys;
}

inline PlanConfig parse_single(const json& obj, const Registry& registry) {
  std::set<std::string> allowed = common_keys();
  allowed.insert("planner");
  allowed.insert("seed");
  reject_unknown_keys(obj, "", allowed);

  PlanConfig cfg;
  apply_common_fields(obj, "", cfg);
  if (obj.contains("planner")) cfg.planner = as_string(obj["planner"], "planner");
  if (obj.contains("seed")) cfg.seed = as_u64(obj["seed"], "seed");
  validate_config(cfg, "", registry, /*check_planner=*/true);
  return cfg;
}

inline std::vector<std::uint64_t> parse_seeds(const json& v, const std::string& path) {
  std::vector<std::uint64_t> seeds;
  if (v.is_array()) {
    if (v.empty()) fail(path, "seed list must be nonempty");
    for (std::size_t i = 0; i < v.size(); ++i) {
      seeds.push_back(as_u64(v[i], path + "[" + std::to_string(i) + "]"));
    }
  } else if (v.is_object()) {
    reject_unknown_keys(v, path, {"from", "count"});
    if (!v.contains("from") || !v.contains("count")) {
      fail(path, "seed range needs both 'from' and 'count'");
    }
    const std::uint64_t from = as_u64(v["from"], path + ".from");
    const std::uint64_t count = as_u64(v["count"], path + ".count");
    if (count < 1) fail(path + ".count", "must be at least 1");
    for (std::uint64_t i = 0; i < count; ++i) seeds.push_back(from + i);
  } else {
    fail(path, "expected a seed array or {from, count} range");
  }
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) fail(path, "seeds must be distinct");
  return seeds;
}

inline BenchmarkSpec parse_benchmark(const json& obj, const Registry& registry) {
  reject_unknown_keys(obj, "", {"templates"});
  const json& templates = obj["templates"];
  if (!templates.is_array() || templates.empty()) {
    fail("templates", "expected a nonempty array");
  }

  BenchmarkSpec spec;
  for (std::size_t i = 0; i < templates.size(); ++i) {
    const std::string path = "templates[" + std::to_string(i) + "]";
    const json& tpl = templates[i];
    if (!tpl.is_object()) fail(path, "expected an object");

    std::set<std::string> allowed = common_keys();
    allowed.insert("planners");
    allowed.insert("seeds");
    reject_unknown_keys(tpl, path, allowed);

    BenchmarkTemplate out;
    out.base.id = "template" + std::to_string(i);
    apply_common_fields(tpl, path, out.base);

    if (!tpl.contains("planners")) fail(join(path, "planners"), "is required");
    const json& planners = tpl["planners"];
    if (!planners.is_array() || planners.empty()) {
      fail(join(path, "planners"), "expected a nonempty array of names");
    }
    for (std::size_t p = 0; p < planners.size(); ++p) {
      const std::string name =
          as_string(planners[p], join(path, "planners[" + std::to_string(p) + "]"));
      if (!registry.has_planner(name)) {
        throw UnknownNameError("unknown planner '" + name +
                               "'; available: " + registry.available_planners());
      }
      out.planners.push_back(name);
    }

    if (!tpl.contains("seeds")) fail(join(path, "seeds"), "is required");
    out.seeds = parse_seeds(tpl["seeds"], join(path, "seeds"));

    validate_config(out.base, path, registry, /*check_planner=*/false);
    spec.templates.push_back(std::move(out));
  }
  return spec;
}

}  // namespace config_detail

/// Parses a config file: a single plan object, or a benchmark spec when the
/// top-level "templates" key is present. Unknown keys are rejected with
/// their path; semantic problems name the offending field.
inline ParsedConfig parse_config(const std::string& json_text,
                                 const Registry& registry = default_registry()) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    // Translate the byte offset into line/column for the error message.
    std::size_t line = 1, column = 1;
    const std::size_t stop = e.byte > 0 ? e.byte - 1 : 0;
    for (std::size_t i = 0; i < stop && i < json_text.size(); ++i) {
      if (json_text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError("JSON syntax error at line " + std::to_string(line) +
                      ", column " + std::to_string(column) + ": " + e.what());
  }
  if (!root.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  if (root.contains("templates")) {
    return config_detail::parse_benchmark(root, registry);
  }
  return config_detail::parse_single(root, registry);
}

}  // namespace sbmp
