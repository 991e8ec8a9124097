#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sbmp/config.hpp"
#include "sbmp/env.hpp"
#include "sbmp/grid.hpp"
#include "sbmp/planner.hpp"
#include "sbmp/registry.hpp"
#include "sbmp/svg.hpp"

namespace sbmp {

/// Flat per-run stats row, mirroring PlannerStats plus run identity. One
/// record per executed plan; the CSV column set and this struct match 1:1.
struct RunRecord {
  std::string config_id;
  std::string planner;
  std::string sampler;
  std::uint64_t seed = 0;
  bool success = false;
  double cost = std::numeric_limits<double>::infinity();
  double wall_time = 0.0;
  std::uint64_t nodes_added = 0;
  std::uint64_t samples_drawn = 0;
  std::uint64_t config_checks = 0;
  std::uint64_t motion_checks = 0;
  std::uint64_t invalid_obstacle = 0;
  std::uint64_t invalid_connections = 0;
};

inline constexpr const char* kCsvHeader =
    "config_id,planner,sampler,seed,success,cost,wall_time,nodes_added,"
    "samples_drawn,config_checks,motion_checks,invalid_obstacle,"
    "invalid_connections";

namespace bench_detail {

inline std::string cost_text(double cost) {
  return std::isfinite(cost) ? fmt_number(cost) : std::string("inf");
}

}  // namespace bench_detail

inline RunRecord make_record(const PlanConfig& cfg, const PlanResult& result) {
  RunRecord rec;
  rec.config_id = cfg.id;
  rec.planner = cfg.planner;
  rec.sampler = cfg.sampler;
  rec.seed = cfg.seed;
  rec.success = result.success;
  rec.cost = result.cost;
  rec.wall_time = result.stats.wall_time;
  rec.nodes_added = result.stats.nodes_added;
  rec.samples_drawn = result.stats.samples_drawn;
  rec.config_checks = result.stats.checks.config_checks;
  rec.motion_checks = result.stats.checks.motion_checks;
  rec.invalid_obstacle = result.stats.checks.invalid_obstacle;
  rec.invalid_connections = result.stats.checks.invalid_connections;
  return rec;
}

/// JSON form of a record. Infinite cost serializes as the string "inf"
/// (JSON has no infinity literal). When a path is supplied — single runs —
/// it is included as an array of configurations.
inline nlohmann::json record_to_json(const RunRecord& rec,
                                     const std::vector<Configuration>* path =
                                         nullptr) {
  nlohmann::json j{
      {"config_id", rec.config_id},
      {"planner", rec.planner},
      {"sampler", rec.sampler},
      {"seed", rec.seed},
      {"success", rec.success},
      {"wall_time", rec.wall_time},
      {"nodes_added", rec.nodes_added},
      {"samples_drawn", rec.samples_drawn},
      {"config_checks", rec.config_checks},
      {"motion_checks", rec.motion_checks},
      {"invalid_obstacle", rec.invalid_obstacle},
      {"invalid_connections", rec.invalid_connections},
  };
  if (std::isfinite(rec.cost)) {
    j["cost"] = rec.cost;
  } else {
    j["cost"] = "inf";
  }
  if (path != nullptr) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Configuration& q : *path) arr.push_back(q.coords());
    j["path"] = std::move(arr);
  }
  return j;
}

/// One CSV row in the pinned column order. Numbers use the same formatter
/// as the JSON writer, so the two outputs agree byte-for-byte per field.
inline void write_csv_row(const RunRecord& rec, std::ostream& out) {
  out << rec.config_id << ',' << rec.planner << ',' << rec.sampler << ','
      << rec.seed << ',' << (rec.success ? "true" : "false") << ','
      << bench_detail::cost_text(rec.cost) << ',' << fmt_number(rec.wall_time)
      << ',' << rec.nodes_added << ',' << rec.samples_drawn << ','
      << rec.config_checks << ',' << rec.motion_checks << ','
      << rec.invalid_obstacle << ',' << rec.invalid_connections << '\n';
}

inline void write_csv(const std::vector<RunRecord>& records, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const RunRecord& rec : records) write_csv_row(rec, out);
}

inline std::unique_ptr<EnvModel> make_env(
    const PlanConfig& cfg, std::shared_ptr<const OccupancyGrid> grid) {
  if (cfg.env_kind == EnvKind::arm) {
    return std::make_unique<PlanarArmEnv>(std::move(grid),
                                          Vec2{cfg.arm_base[0], cfg.arm_base[1]},
                                          cfg.arm_links);
  }
  return std::make_unique<PointMassEnv>(std::move(grid));
}

/// A completed single run with everything rendering or inspection needs.
struct RunOutput {
  PlanConfig config;
  RunRecord record;
  PlanResult result;
  std::shared_ptr<const OccupancyGrid> grid;
  std::unique_ptr<EnvModel> env;
  std::unique_ptr<Sampler> sampler;
  std::unique_ptr<Planner> planner;
};

/// Executes one configured plan: environment, sampler, and planner come
/// from the registry; the RNG is seeded from the config. A planner that
/// finds no path is still a completed run (success=false), not an error.
inline RunOutput run_single(const PlanConfig& cfg,
                            const Registry& registry = default_registry(),
                            std::shared_ptr<const OccupancyGrid> grid = nullptr) {
  RunOutput out;
  out.config = cfg;
  out.grid = grid ? std::move(grid)
                  : std::make_shared<const OccupancyGrid>(
                        load_netpbm_file(cfg.map_path));
  out.env = make_env(cfg, out.grid);
  out.sampler = registry.create_sampler(cfg.sampler);
  out.sampler->configure(SamplerSettings{cfg.p_goal});
  out.planner = registry.create_planner(cfg.planner);

  Rng rng(cfg.seed);
  PlanRequest req{*out.env,
                  *out.sampler,
                  Configuration(cfg.start),
                  Configuration(cfg.goal),
                  rng,
                  cfg.max_nodes,
                  cfg.eps,
                  cfg.goal_radius,
                  cfg.p_goal,
                  cfg.prm_k,
                  cfg.rewire_multiplier,
                  {}};
  out.result = out.planner->solve(req);
  out.record = make_record(cfg, out.result);
  return out;
}

/// Scene assembly for `render_svg`. Touches the render counter only through
/// the renderer itself.
inline RenderScene make_scene(const RunOutput& out) {
  RenderScene scene{*out.grid,
                    dynamic_cast<const PlanarArmEnv*>(out.env.get()),
                    out.planner->edges(),
                    out.result.path,
                    Configuration(out.config.start),
                    Configuration(out.config.goal)};
  return scene;
}

/// Runs the full cross product of a benchmark spec. Records come back in
/// canonical order (template x planner x ascending seed) no matter how many
/// worker threads executed them; rendering is never touched. All config
/// problems (bad maps, colliding start/goal) abort before any run starts.
inline std::vector<RunRecord> run_benchmark(
    const BenchmarkSpec& spec, unsigned jobs = 1,
    const Registry& registry = default_registry()) {
  // Fail fast: load every referenced map once, then check start/goal
  // validity per template with a throwaway environment.
  std::map<std::string, std::shared_ptr<const OccupancyGrid>> grids;
  for (const BenchmarkTemplate& tpl : spec.templates) {
    if (!grids.count(tpl.base.map_path)) {
      grids[tpl.base.map_path] = std::make_shared<const OccupancyGrid>(
          load_netpbm_file(tpl.base.map_path));
    }
    auto env = make_env(tpl.base, grids[tpl.base.map_path]);
    if (!env->is_free_config(Configuration(tpl.base.start))) {
      throw InvalidPlanInput("template '" + tpl.base.id +
                             "': start configuration is in collision");
    }
    if (!env->is_free_config(Configuration(tpl.base.goal))) {
      throw InvalidPlanInput("template '" + tpl.base.id +
                             "': goal configuration is in collision");
    }
  }

  const std::vector<PlanConfig> runs = spec.expand();
  std::vector<RunRecord> records(runs.size());

  const auto execute = [&](std::size_t i) {
    records[i] = run_single(runs[i], registry, grids.at(runs[i].map_path)).record;
  };

  if (jobs <= 1 || runs.size() <= 1) {
    for (std::size_t i = 0; i < runs.size(); ++i) execute(i);
    return records;
  }

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  const std::size_t worker_count = std::min<std::size_t>(jobs, runs.size());
  workers.reserve(worker_count);
  for (std::size_t t = 0; t < worker_count; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= runs.size() || failed.load()) break;
        try {
          execute(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true);
          break;
        }
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  if (error) std::rethrow_exception(error);
  return records;
}

namespace bench_detail {

inline nlohmann::json median_or_null(std::vector<double> values) {
  if (values.empty()) return nullptr;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  const double med = n % 2 == 1 ? values[n / 2]
                                : (values[n / 2 - 1] + values[n / 2]) / 2.0;
  return med;
}

}  // namespace bench_detail

/// Aggregates records into one summary entry per (template, planner):
/// success rate, cost stats over the successful runs, sample-count median,
/// and collision-check totals.
inline nlohmann::json benchmark_summary(const BenchmarkSpec& spec,
                                        const std::vector<RunRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  std::size_t cursor = 0;
  for (const BenchmarkTemplate& tpl : spec.templates) {
    for (const std::string& planner : tpl.planners) {
      const std::size_t n = tpl.seeds.size();
      std::vector<double> costs;
      std::vector<double> samples;
      std::uint64_t successes = 0;
      std::uint64_t config_checks = 0, motion_checks = 0;
      std::uint64_t invalid_obstacle = 0, invalid_connections = 0;
      for (std::size_t s = 0; s < n; ++s) {
        const RunRecord& rec = records.at(cursor++);
        if (rec.success) {
          ++successes;
          costs.push_back(rec.cost);
        }
        samples.push_back(static_cast<double>(rec.samples_drawn));
        config_checks += rec.config_checks;
        motion_checks += rec.motion_checks;
        invalid_obstacle += rec.invalid_obstacle;
        invalid_connections += rec.invalid_connections;
      }
      nlohmann::json entry{
          {"config_id", tpl.base.id},
          {"planner", planner},
          {"sampler", tpl.base.sampler},
          {"runs", n},
          {"successes", successes},
          {"success_rate", static_cast<double>(successes) / n},
          {"samples_median", bench_detail::median_or_null(std::move(samples))},
          {"config_checks_total", config_checks},
          {"motion_checks_total", motion_checks},
          {"invalid_obstacle_total", invalid_obstacle},
          {"invalid_connections_total", invalid_connections},
      };
      double mean = 0.0;
      for (double c : costs) mean += c;
      entry["cost_mean"] =
          costs.empty() ? nlohmann::json(nullptr)
                        : nlohmann::json(mean / static_cast<double>(costs.size()));
      entry["cost_median"] = bench_detail::median_or_null(std::move(costs));
      out.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace sbmp
