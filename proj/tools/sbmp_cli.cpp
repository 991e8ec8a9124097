// Command-line front end: single plan runs, multi-seed benchmarks, registry
// listing, and SVG rendering of finished runs.
//
// Exit codes: 0 = ran (including "no path found"), 2 = input/config error,
// 3 = internal error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>

#include "sbmp/sbmp.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw sbmp::InputError("cannot open config file '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw sbmp::IoError("cannot open '" + path + "' for writing");
  }
  out << content;
  if (!out) {
    throw sbmp::IoError("write to '" + path + "' failed");
  }
}

sbmp::PlanConfig load_plan_config(const std::string& config_path) {
  auto parsed = sbmp::parse_config(read_file(config_path));
  if (!std::holds_alternative<sbmp::PlanConfig>(parsed)) {
    throw sbmp::ConfigError(
        "'" + config_path +
        "' is a benchmark spec; use the benchmark subcommand");
  }
  return std::get<sbmp::PlanConfig>(parsed);
}

sbmp::BenchmarkSpec load_benchmark_spec(const std::string& config_path) {
  auto parsed = sbmp::parse_config(read_file(config_path));
  if (!std::holds_alternative<sbmp::BenchmarkSpec>(parsed)) {
    throw sbmp::ConfigError("'" + config_path +
                            "' is a single plan config; use the plan subcommand");
  }
  return std::get<sbmp::BenchmarkSpec>(parsed);
}

void render_to_file(const sbmp::RunOutput& run, const std::string& svg_path) {
  std::ostringstream svg;
  sbmp::render_svg(sbmp::make_scene(run), svg);
  write_file(svg_path, svg.str());
}

int run_plan(const std::string& config_path, std::string out_path,
             std::string svg_path, bool want_render) {
  sbmp::PlanConfig cfg = load_plan_config(config_path);
  if (out_path.empty()) out_path = cfg.out_path;
  if (svg_path.empty()) svg_path = cfg.svg_path;

  const sbmp::RunOutput run = sbmp::run_single(cfg);
  const std::string record =
      sbmp::record_to_json(run.record, &run.result.path).dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << record;
  } else {
    write_file(out_path, record);
  }

  if (want_render && svg_path.empty()) {
    throw sbmp::ConfigError("render requires --svg or an 'svg' config entry");
  }
  if (!svg_path.empty()) {
    render_to_file(run, svg_path);
  }

  std::cerr << (run.record.success ? "path found, cost "
                                   : "no path found after ")
            << (run.record.success
                    ? sbmp::fmt_number(run.record.cost)
                    : std::to_string(run.record.samples_drawn) + " samples")
            << "\n";
  return 0;
}

int run_benchmark_cmd(const std::string& config_path, const std::string& out_path,
                      const std::string& summary_path, unsigned jobs) {
  const sbmp::BenchmarkSpec spec = load_benchmark_spec(config_path);
  const auto records = sbmp::run_benchmark(spec, jobs);

  std::ostringstream csv;
  sbmp::write_csv(records, csv);
  write_file(out_path, csv.str());

  if (!summary_path.empty()) {
    write_file(summary_path, sbmp::benchmark_summary(spec, records).dump(2) + "\n");
  }
  std::cerr << records.size() << " runs written to " << out_path << "\n";
  return 0;
}

int run_list() {
  const auto& registry = sbmp::default_registry();
  std::cout << "planners:\n";
  for (const auto& name : registry.list_planners()) {
    std::cout << "  " << name << "\n";
  }
  std::cout << "samplers:\n";
  for (const auto& name : registry.list_samplers()) {
    std::cout << "  " << name << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sampling-based motion planning benchmark harness"};
  app.require_subcommand(1);

  std::string config_path, out_path, svg_path, summary_path;
  unsigned jobs = 1;

  CLI::App* plan = app.add_subcommand("plan", "run a single configured plan");
  plan->add_option("--config", config_path, "plan config (JSON)")->required();
  plan->add_option("--out", out_path, "write the run record here (JSON)");
  plan->add_option("--svg", svg_path, "render the run to this SVG file");

  CLI::App* bench = app.add_subcommand("benchmark",
                                       "run a benchmark spec, visualization off");
  bench->add_option("--config", config_path, "benchmark spec (JSON)")->required();
  bench->add_option("--out", out_path, "write per-run CSV here")->required();
  bench->add_option("--summary", summary_path, "write aggregate JSON here");
  bench->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);

  CLI::App* list = app.add_subcommand("list", "print registered planners/samplers");

  CLI::App* render = app.add_subcommand("render", "re-run a plan and render it");
  render->add_option("--config", config_path, "plan config (JSON)")->required();
  render->add_option("--svg", svg_path, "output SVG file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (plan->parsed()) return run_plan(config_path, out_path, svg_path, false);
    if (bench->parsed()) {
      return run_benchmark_cmd(config_path, out_path, summary_path, jobs);
    }
    if (list->parsed()) return run_list();
    if (render->parsed()) return run_plan(config_path, out_path, svg_path, true);
  } catch (const sbmp::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
