#include "tmitstar/benchmark.hpp"
#include "tmitstar/instance_gen.hpp"
#include "tmitstar/plan_io.hpp"
#include "tmitstar/planner.hpp"
#include "tmitstar/problem_io.hpp"
#include "tmitstar/svg.hpp"
#include "tmitstar/validator.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

namespace fs = std::filesystem;
using namespace tmitstar;

struct SamplerFlags {
  std::optional<int> batch_size;
  std::optional<int> batch_budget;
  std::optional<int> attempt_budget;
  std::optional<double> mu;

  auto apply(SamplerConfig& config) const -> void {
    if (batch_size) {
      config.batch_size = *batch_size;
    }
    if (batch_budget) {
      config.batch_budget = *batch_budget;
    }
    if (attempt_budget) {
      config.initial_attempt_budget = *attempt_budget;
    }
    if (mu) {
      config.mu = *mu;
    }
  }
};

auto add_sampler_flags(CLI::App* cmd, SamplerFlags& flags, bool with_batch_budget = true)
    -> void {
  cmd->add_option("--batch-size", flags.batch_size, "Samples drawn per mode per batch");
  if (with_batch_budget) {
    cmd->add_option("--batch-budget", flags.batch_budget,
                    "Completed batches between replanning requests");
  }
  cmd->add_option("--attempt-budget", flags.attempt_budget,
                  "Initial projection attempts per (mode, action)");
  cmd->add_option("--mu", flags.mu,
                  "Projection gate distance (default: the mode's connection radius)");
}

auto cmd_plan(const std::string& problem_file, const PlannerConfig& config,
              const std::string& output_dir, bool trace) -> int {
  const Problem problem = load_problem(problem_file);
  const PlanResult result = plan(problem, config);

  if (trace) {
    for (const ImprovementEvent& ev : result.improvements) {
      std::cout << "improvement t=" << csv_number(ev.t) << " cost=" << csv_number(ev.cost)
                << "\n";
    }
  }

  const PlannerStats& s = result.stats;
  std::cout << (result.solved ? "solved" : "no solution") << " in " << csv_number(s.elapsed_s)
            << " s";
  if (result.solved) {
    std::cout << ", cost " << csv_number(result.best_cost) << " after "
              << result.improvements.size() << " improvement(s)";
  }
  std::cout << "\n"
            << "batches " << s.batches << ", projections " << s.projections << ", samples pruned "
            << s.samples_pruned << ", edges validated " << s.edges_validated << ", plans "
            << s.plans_generated << ", prefix blocks " << s.prefix_blocks
            << (s.sat_exhausted ? ", task plans exhausted" : "") << "\n";

  if (result.solved) {
    const ValidationReport report = validate_solution(problem, result.best_path);
    if (!report.ok) {
      std::cerr << "warning: produced path fails validation:\n";
      for (const std::string& v : report.violations) {
        std::cerr << "  " << v << "\n";
      }
    }
  }

  if (!output_dir.empty()) {
    fs::create_directories(output_dir);
    if (result.solved) {
      save_plan(problem, result.best_path, (fs::path(output_dir) / "plan.json").string());
      save_svg(render_plan_svg(problem, result.best_path),
               (fs::path(output_dir) / "trace.svg").string());
    } else {
      save_svg(render_scene_svg(problem), (fs::path(output_dir) / "trace.svg").string());
    }
    std::ofstream events((fs::path(output_dir) / "improvements.csv").string());
    events << "t,cost\n";
    for (const ImprovementEvent& ev : result.improvements) {
      events << csv_number(ev.t) << ',' << csv_number(ev.cost) << "\n";
    }
  }
  return result.solved ? 0 : 2;
}

}  // namespace

auto main(int argc, char** argv) -> int {
  CLI::App app{"Anytime task-and-motion planner for planar pick-and-place"};
  app.require_subcommand(1);

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "Solve one problem file");
  std::string problem_file;
  PlannerConfig config;
  SamplerFlags sampler_flags;
  std::string output_dir;
  bool trace = false;
  plan_cmd->add_option("--problem", problem_file, "Problem JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  plan_cmd->add_option("--time-budget", config.time_budget_s, "Wall-clock budget in seconds");
  plan_cmd->add_option("--seed", config.seed, "Random seed");
  add_sampler_flags(plan_cmd, sampler_flags);
  plan_cmd->add_option("--batch-cap", config.batch_cap,
                       "Stop after this many batches instead of wall time (reproducible runs)");
  plan_cmd->add_option("--max-horizon", config.max_horizon, "Longest symbolic plan considered");
  plan_cmd->add_flag("--stop-on-first", config.stop_on_first,
                     "Return at the first solution instead of improving it");
  plan_cmd->add_option("--output", output_dir, "Directory for plan.json, trace.svg, and events");
  plan_cmd->add_flag("--trace", trace, "Print each improvement as it was recorded");

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate a benchmark instance");
  std::string kind_name = "clutter";
  int objects = 3;
  std::uint64_t gen_seed = 0;
  std::string out_file;
  gen_cmd->add_option("--kind", kind_name, "Instance family")
      ->check(CLI::IsMember({"clutter", "shelf"}));
  gen_cmd->add_option("--objects", objects, "Number of movable objects")->required();
  gen_cmd->add_option("--seed", gen_seed, "Generator seed");
  gen_cmd->add_option("--out", out_file, "Output problem file")->required();

  // validate
  auto* val_cmd = app.add_subcommand("validate", "Check a plan against its problem");
  std::string val_problem;
  std::string val_plan;
  val_cmd->add_option("--problem", val_problem, "Problem JSON file")
      ->required()
      ->check(CLI::ExistingFile);
  val_cmd->add_option("--plan", val_plan, "Plan JSON file")->required()->check(CLI::ExistingFile);

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a suite of instances over many seeds");
  BenchmarkConfig bench;
  SamplerFlags bench_sampler_flags;
  std::optional<int> bench_batch_budget;
  bench_cmd->add_option("--suite", bench.suite_dir, "Directory of problem JSON files")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench_cmd->add_option("--seeds", bench.seeds, "Trials per instance");
  bench_cmd->add_option("--time-budget", bench.time_budget_s, "Per-trial budget in seconds");
  bench_cmd->add_option("--out", bench.out_dir, "Output directory");
  bench_cmd->add_option("--seed", bench.base.seed, "Base seed; trial k uses seed + k");
  add_sampler_flags(bench_cmd, bench_sampler_flags, /*with_batch_budget=*/false);
  bench_cmd->add_option("--batch-budget", bench_batch_budget,
                        "Replanning interval for every instance (default: per-family)");
  bench_cmd->add_option("--batch-cap", bench.base.batch_cap,
                        "Stop each trial after this many batches instead of wall time");
  bench_cmd->add_flag("--stop-on-first", bench.base.stop_on_first,
                      "Stop each trial at its first solution");
  bench_cmd->add_flag("--no-svg", [&bench](std::int64_t) { bench.write_svg = false; },
                      "Skip per-trial SVG traces");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*plan_cmd) {
      sampler_flags.apply(config.sampler);
      return cmd_plan(problem_file, config, output_dir, trace);
    }
    if (*gen_cmd) {
      const InstanceKind kind =
          kind_name == "shelf" ? InstanceKind::Shelf : InstanceKind::Clutter;
      const Problem problem = generate_instance(kind, objects, gen_seed);
      save_problem(problem, out_file);
      std::cout << "wrote " << out_file << " (" << problem.name << ", "
                << problem.actions.size() << " ground actions)\n";
      return 0;
    }
    if (*val_cmd) {
      const Problem problem = load_problem(val_problem);
      const SolutionPath path = load_plan(problem, val_plan);
      const ValidationReport report = validate_solution(problem, path);
      if (report.ok) {
        std::cout << "valid (cost " << csv_number(path.cost) << ")\n";
        return 0;
      }
      for (const std::string& v : report.violations) {
        std::cout << v << "\n";
      }
      return 2;
    }
    if (*bench_cmd) {
      bench_sampler_flags.apply(bench.base.sampler);
      bench.batch_budget = bench_batch_budget;
      const auto trials = run_benchmark(bench);
      int solved = 0;
      int valid = 0;
      for (const TrialRecord& t : trials) {
        solved += t.solved ? 1 : 0;
        valid += t.validated ? 1 : 0;
      }
      std::cout << trials.size() << " trials, " << solved << " solved, " << valid
                << " validated; results in " << bench.out_dir << "\n";
      return solved == static_cast<int>(trials.size()) ? 0 : 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
