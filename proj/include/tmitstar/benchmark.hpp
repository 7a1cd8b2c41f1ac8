#pragma once

#include "tmitstar/planner.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace tmitstar {

struct TrialRecord {
  std::string instance;
  std::uint64_t seed = 0;
  double time_budget_s = 0.0;
  std::vector<ImprovementEvent> improvements;
  bool solved = false;
  bool crashed = false;
  bool validated = false;  // the best path passed the independent validator
  double t_init = std::numeric_limits<double>::infinity();
  double final_cost = std::numeric_limits<double>::infinity();
  double final_t = 0.0;
  SolutionPath best_path;
  PlannerStats stats;
};

struct BenchmarkConfig {
  std::string suite_dir;
  std::string out_dir = "bench_out";
  int seeds = 20;
  double time_budget_s = 60.0;
  PlannerConfig base;                     // seed is offset per trial index
  std::optional<int> batch_budget;        // overrides the per-kind default
  bool write_svg = true;
};

// Runs every instance in the suite directory across all seeds, validates
// each solved trial, and writes results.csv (one row per improvement plus a
// final row per trial), summary.csv (per-instance medians with bootstrap
// confidence intervals), and one trace SVG per solved trial. Unsolved trials
// enter the statistics with infinite time and cost; a crashing trial is
// isolated and recorded with outcome "crash". With a batch cap set, rows are
// reproducible byte for byte under the same configuration.
auto run_benchmark(const BenchmarkConfig& config) -> std::vector<TrialRecord>;

// Formatting shared with tests: full-precision decimal, or the literal "inf".
[[nodiscard]] auto csv_number(double v) -> std::string;

struct SummaryRow {
  std::string instance;
  int n_trials = 0;
  int n_solved = 0;
  double median_t_init = std::numeric_limits<double>::infinity();
  double ci_lo = std::numeric_limits<double>::infinity();
  double ci_hi = std::numeric_limits<double>::infinity();
  double median_final_cost = std::numeric_limits<double>::infinity();
};

// Per-instance medians over trials, with a nonparametric bootstrap (10^4
// resamples, seeded from the instance name) for the 95% interval around the
// median initial-solution time.
[[nodiscard]] auto summarize(const std::vector<TrialRecord>& trials) -> std::vector<SummaryRow>;

[[nodiscard]] auto median_of(std::vector<double> values) -> double;

}  // namespace tmitstar
