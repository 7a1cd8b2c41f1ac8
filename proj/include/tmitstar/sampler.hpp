#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/modes.hpp"
#include "tmitstar/search_graph.hpp"
#include "tmitstar/task_plan.hpp"

#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

namespace tmitstar {

struct SamplerConfig {
  int batch_size = 50;            // uniform samples per mode per batch
  int batch_budget = 5;           // batches between granted replanning requests
  int initial_attempt_budget = 1; // projection attempts per (mode, action)
  std::optional<double> mu;       // projection gate; defaults to the mode's connection radius
  int max_rejections = 1000;      // rejection-sampling cap per accepted sample
};

// What one sampling call observed; consumed by the replanning trigger.
struct BatchOutcome {
  bool goal_sample_found = false;  // returned early with a goal-satisfying state
  bool batch_completed = false;    // the mode queue drained
  bool no_viable_actions = false;  // observed before any budget increase
  bool budget_increased = false;
  bool at_goal = false;            // a goal vertex exists in the graph
  bool replan_wanted = false;
  int new_vertices = 0;
  int new_transitions = 0;
  int projections = 0;
  int projection_successes = 0;
};

// Decides whether a new task plan should be requested given the outcome of a
// completed batch: replan when no goal state exists yet, or when even a
// budget refresh left no action worth attempting.
[[nodiscard]] auto replan_trigger(const BatchOutcome& outcome) -> bool;

// Draws uniform valid samples mode by mode and extends the reachable mode set
// by projecting gated samples onto action precondition manifolds. The mode
// queue is LIFO over reach events and persists across calls: an early goal
// return suspends the current batch, and the next call resumes it.
class BatchSampler {
public:
  BatchSampler(const Problem& problem, SamplerConfig config, std::uint64_t seed);

  // `incumbent` is the cost of the best known solution; once finite, samples
  // (and projected or effect states) whose admissible solution bound meets it
  // are discarded before touching the graph. A discarded draw still consumes
  // its quota slot, so the sampling distribution is untouched — the graph just
  // stops growing where no improvement can pass.
  auto sample_batch(ModeSet& modes, SearchGraph& graph, const std::vector<SymbolicPlan>& plans,
                    const std::function<bool()>& should_stop = {},
                    double incumbent = std::numeric_limits<double>::infinity()) -> BatchOutcome;

  // Plan actions (and possibly the goal pseudo-action kGoalAction) applicable
  // in this mode's family with attempts remaining, in plan-then-step order,
  // deduplicated.
  [[nodiscard]] auto viable_actions(const Mode& mode, const std::vector<SymbolicPlan>& plans) const
      -> std::vector<int>;

  // Refreshes every exhausted action with exactly one more attempt. Throws
  // std::logic_error while some action is still viable.
  auto increase_budget(const ModeSet& modes, const std::vector<SymbolicPlan>& plans) -> void;

  [[nodiscard]] auto attempt_budget() const -> int { return attempt_budget_; }
  [[nodiscard]] auto batches_completed() const -> int { return batches_completed_; }
  [[nodiscard]] auto total_projections() const -> long { return total_projections_; }
  [[nodiscard]] auto total_gated_calls() const -> long { return total_gated_calls_; }
  [[nodiscard]] auto samples_pruned() const -> long { return samples_pruned_; }

  // Push/pop trace of the current or last batch ('+' push, '-' pop), for
  // verifying queue discipline.
  [[nodiscard]] auto queue_trace() const -> const std::vector<std::pair<char, int>>& {
    return trace_;
  }

private:
  auto seed_queue(const ModeSet& modes) -> void;
  auto push_mode(int mode) -> void;
  auto pop_mode() -> int;
  [[nodiscard]] auto gate_threshold(const SearchGraph& graph, int mode) const -> double;
  [[nodiscard]] auto any_viable(const ModeSet& modes, const std::vector<SymbolicPlan>& plans) const
      -> bool;
  auto sample_valid_config(const Mode& mode) -> std::optional<Config>;

  const Problem* problem_;
  SamplerConfig config_;
  SolutionBound bound_;
  std::mt19937_64 rng_;
  int attempt_budget_;
  int batches_completed_ = 0;
  long total_projections_ = 0;
  long total_gated_calls_ = 0;
  long samples_pruned_ = 0;

  std::vector<int> queue_;
  std::vector<std::uint8_t> in_queue_;
  std::vector<int> quota_;
  bool batch_active_ = false;
  bool rejection_warned_ = false;
  std::vector<std::pair<char, int>> trace_;
};

}  // namespace tmitstar
