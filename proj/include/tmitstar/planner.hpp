#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/sampler.hpp"
#include "tmitstar/search.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

namespace tmitstar {

struct PlannerConfig {
  SamplerConfig sampler;
  double time_budget_s = 30.0;
  // When positive, planning stops after this many completed batches instead
  // of after wall time, and improvement timestamps count batches. Runs become
  // reproducible to the byte.
  int batch_cap = 0;
  std::uint64_t seed = 0;
  int max_horizon = 20;
  bool stop_on_first = false;
};

// One strict improvement of the incumbent solution.
struct ImprovementEvent {
  double t = 0.0;  // wall seconds, or completed batches when a batch cap is set
  double cost = 0.0;
  SolutionPath path;
};

struct PlannerStats {
  int batches = 0;
  long projections = 0;
  long projection_successes = 0;
  long samples_pruned = 0;
  long edges_validated = 0;
  int plans_generated = 0;
  int prefix_blocks = 0;
  int full_blocks = 0;
  int modes = 0;
  int vertices = 0;
  int transitions = 0;
  bool sat_exhausted = false;
  double elapsed_s = 0.0;
};

struct PlanResult {
  bool solved = false;
  double best_cost = std::numeric_limits<double>::infinity();
  SolutionPath best_path;
  std::vector<ImprovementEvent> improvements;
  PlannerStats stats;
};

// Anytime planning loop: interleaves symbolic plan generation, batch
// sampling over the reached modes, and bidirectional search over the growing
// graph, emitting strictly improving solutions until the budget runs out.
[[nodiscard]] auto plan(const Problem& problem, const PlannerConfig& config) -> PlanResult;

}  // namespace tmitstar
