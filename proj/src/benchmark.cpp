#include "tmitstar/benchmark.hpp"

#include "tmitstar/plan_io.hpp"
#include "tmitstar/problem_io.hpp"
#include "tmitstar/rng.hpp"
#include "tmitstar/svg.hpp"
#include "tmitstar/validator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

namespace tmitstar {

namespace fs = std::filesystem;

auto csv_number(double v) -> std::string {
  if (std::isinf(v)) {
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

auto median_of(std::vector<double> values) -> double {
  if (values.empty()) {
    return std::numeric_limits<double>::infinity();
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) {
    return values[n / 2];
  }
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

namespace {

auto bootstrap_median_ci(const std::vector<double>& values, std::uint64_t seed)
    -> std::pair<double, double> {
  if (values.empty()) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  constexpr int kResamples = 10'000;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  std::vector<double> medians;
  medians.reserve(kResamples);
  std::vector<double> sample(values.size());
  for (int b = 0; b < kResamples; ++b) {
    for (double& s : sample) {
      s = values[pick(rng)];
    }
    medians.push_back(median_of(sample));
  }
  std::sort(medians.begin(), medians.end());
  const auto lo = static_cast<std::size_t>(0.025 * kResamples);
  const auto hi = static_cast<std::size_t>(0.975 * kResamples) - 1;
  return {medians[lo], medians[hi]};
}

auto run_trial(const Problem& problem, const std::string& instance, int index,
               const BenchmarkConfig& config) -> TrialRecord {
  TrialRecord record;
  record.instance = instance;
  record.seed = config.base.seed + static_cast<std::uint64_t>(index);
  record.time_budget_s = config.time_budget_s;

  PlannerConfig pc = config.base;
  pc.seed = record.seed;
  pc.time_budget_s = config.time_budget_s;
  if (config.batch_budget) {
    pc.sampler.batch_budget = *config.batch_budget;
  } else if (instance.rfind("shelf", 0) == 0) {
    // Shelf pockets stall sampling sooner, so allow earlier replanning.
    pc.sampler.batch_budget = 2;
  }

  try {
    const PlanResult result = plan(problem, pc);
    record.improvements = result.improvements;
    record.solved = result.solved;
    record.stats = result.stats;
    record.final_t = pc.batch_cap > 0 ? static_cast<double>(result.stats.batches)
                                      : result.stats.elapsed_s;
    if (result.solved) {
      record.best_path = result.best_path;
      record.final_cost = result.best_cost;
      record.t_init = result.improvements.front().t;
      record.validated = validate_solution(problem, result.best_path).ok;
    }
  } catch (const std::exception& e) {
    record.crashed = true;
    std::cerr << "trial " << instance << " seed " << record.seed << " crashed: " << e.what()
              << "\n";
  }
  return record;
}

auto outcome_of(const TrialRecord& r) -> const char* {
  if (r.crashed) {
    return "crash";
  }
  return r.solved ? "solved" : "timeout";
}

}  // namespace

auto summarize(const std::vector<TrialRecord>& trials) -> std::vector<SummaryRow> {
  std::vector<std::string> order;
  for (const TrialRecord& t : trials) {
    if (std::find(order.begin(), order.end(), t.instance) == order.end()) {
      order.push_back(t.instance);
    }
  }

  std::vector<SummaryRow> rows;
  for (const std::string& instance : order) {
    SummaryRow row;
    row.instance = instance;
    std::vector<double> t_init;
    std::vector<double> final_cost;
    for (const TrialRecord& t : trials) {
      if (t.instance != instance) {
        continue;
      }
      ++row.n_trials;
      row.n_solved += t.solved ? 1 : 0;
      t_init.push_back(t.t_init);
      final_cost.push_back(t.final_cost);
    }
    row.median_t_init = median_of(t_init);
    std::tie(row.ci_lo, row.ci_hi) = bootstrap_median_ci(t_init, fnv1a(instance));
    row.median_final_cost = median_of(final_cost);
    rows.push_back(std::move(row));
  }
  return rows;
}

auto run_benchmark(const BenchmarkConfig& config) -> std::vector<TrialRecord> {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(config.suite_dir)) {
    if (entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw std::runtime_error("no .json instances in '" + config.suite_dir + "'");
  }

  fs::create_directories(config.out_dir);
  const fs::path traces = fs::path(config.out_dir) / "traces";
  if (config.write_svg) {
    fs::create_directories(traces);
  }

  std::vector<TrialRecord> trials;
  std::ofstream results(fs::path(config.out_dir) / "results.csv");
  results << "instance,seed,t_seconds,cost,event,outcome\n";

  for (const fs::path& file : files) {
    const Problem problem = load_problem(file);
    const std::string instance = file.stem().string();
    for (int k = 0; k < config.seeds; ++k) {
      TrialRecord record = run_trial(problem, instance, k, config);
      for (const ImprovementEvent& ev : record.improvements) {
        results << instance << ',' << record.seed << ',' << csv_number(ev.t) << ','
                << csv_number(ev.cost) << ",improvement," << outcome_of(record) << "\n";
      }
      results << instance << ',' << record.seed << ',' << csv_number(record.final_t) << ','
              << csv_number(record.final_cost) << ",final," << outcome_of(record) << "\n";
      if (config.write_svg && record.solved) {
        const fs::path svg =
            traces / (instance + "_seed" + std::to_string(record.seed) + ".svg");
        save_svg(render_plan_svg(problem, record.best_path), svg.string());
        save_plan(problem, record.best_path,
                  (traces / (instance + "_seed" + std::to_string(record.seed) + ".plan.json"))
                      .string());
      }
      trials.push_back(std::move(record));
    }
  }
  results.close();

  std::ofstream summary(fs::path(config.out_dir) / "summary.csv");
  summary << "instance,n_trials,n_solved,median_t_init,ci_lo,ci_hi,median_final_cost\n";
  for (const SummaryRow& row : summarize(trials)) {
    summary << row.instance << ',' << row.n_trials << ',' << row.n_solved << ','
            << csv_number(row.median_t_init) << ',' << csv_number(row.ci_lo) << ','
            << csv_number(row.ci_hi) << ',' << csv_number(row.median_final_cost) << "\n";
  }
  return trials;
}

}  // namespace tmitstar
