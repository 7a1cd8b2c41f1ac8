#include "tmitstar/planner.hpp"

#include "tmitstar/rng.hpp"
#include "tmitstar/task_plan.hpp"

#include <chrono>
#include <optional>

namespace tmitstar {

namespace {

using Clock = std::chrono::steady_clock;

auto trivial_path(const HybridState& q) -> SolutionPath {
  SolutionPath path;
  PathStep step;
  step.start_state = q;
  step.waypoints.push_back(q.robot_config);
  step.action = kNullStep;
  path.steps.push_back(std::move(step));
  path.cost = 0.0;
  return path;
}

}  // namespace

auto plan(const Problem& problem, const PlannerConfig& config) -> PlanResult {
  const auto t0 = Clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };

  PlanResult result;
  const RngStreams streams{config.seed};

  ModeSet modes;
  SearchGraph graph(world_diagonal(problem.scene));
  BatchSampler sampler(problem, config.sampler, streams.derive("sampler"));
  EdgeCache cache;
  ReverseSearch reverse;
  std::vector<SymbolicPlan> plans;

  const RelaxedProblem relaxed = make_relaxed_problem(problem);
  PlanningEncoding encoding(relaxed.domain, relaxed.init, relaxed.goal, streams.derive("sat"));

  const HybridState q0 = problem.initial_state();
  const int m0 = modes.ensure_mode(q0);
  const bool start_is_goal = goal_holds(problem, q0, kSatisfactionTol);
  const int v0 = graph.add_vertex(q0, m0, start_is_goal);

  // Virtual time counts completed batches; improvements found mid-batch carry
  // the count so far.
  const auto now = [&] {
    return config.batch_cap > 0 ? static_cast<double>(sampler.batches_completed()) : elapsed();
  };
  const auto out_of_budget = [&] {
    if (config.batch_cap > 0) {
      return sampler.batches_completed() >= config.batch_cap;
    }
    return elapsed() >= config.time_budget_s;
  };

  const auto finish = [&] {
    result.stats.batches = sampler.batches_completed();
    result.stats.projections = sampler.total_projections();
    result.stats.samples_pruned = sampler.samples_pruned();
    result.stats.modes = modes.size();
    result.stats.vertices = graph.vertex_count();
    result.stats.transitions = graph.transition_count();
    result.stats.elapsed_s = elapsed();
    return result;
  };

  if (start_is_goal) {
    result.solved = true;
    result.best_cost = 0.0;
    result.best_path = trivial_path(q0);
    result.improvements.push_back({now(), 0.0, result.best_path});
    return finish();  // nothing can improve on a zero-cost solution
  }

  const auto request_plan = [&] {
    if (result.stats.sat_exhausted) {
      return false;
    }
    auto p = encoding.solve_next_plan(config.max_horizon);
    if (!p) {
      result.stats.sat_exhausted = true;
      return false;
    }
    ++result.stats.plans_generated;
    plans.push_back(std::move(*p));
    return true;
  };

  static_cast<void>(request_plan());

  int batches_since_replan = 0;
  bool done = false;
  // Wall-clock runs may abort a search phase at the deadline; batch-cap runs
  // never do, so their output is a pure function of (instance, seed, config).
  const std::function<bool()> search_stop =
      config.batch_cap == 0 ? std::function<bool()>(out_of_budget) : std::function<bool()>{};

  while (!done && !out_of_budget()) {
    const BatchOutcome outcome =
        sampler.sample_batch(modes, graph, plans, out_of_budget, result.best_cost);
    result.stats.projection_successes += outcome.projection_successes;

    if (!outcome.batch_completed && !outcome.goal_sample_found) {
      break;  // the budget expired mid-batch
    }

    // In wall-clock mode a phase started at the deadline only pushes results
    // past the budget; batch-cap runs stay untouched to keep them replayable.
    const bool past_deadline = config.batch_cap == 0 && elapsed() >= config.time_budget_s;
    const bool search_now =
        outcome.at_goal && !past_deadline && (outcome.batch_completed || !result.solved);
    if (search_now) {
      reverse.insert_new_vertices(graph, cache);
      // One exhausted pass is exact for the currently validated graph: every
      // improving edge stays queued below the incumbent bound until relaxed.
      // Skipped while the optimistic cost-to-go already rules the start out.
      if (reverse.cost_to_go(v0) < result.best_cost) {
        auto found = forward_search(problem, graph, reverse, cache, v0, result.best_cost,
                                    search_stop);
        result.stats.edges_validated += found.edges_validated;
        if (found.path) {
          result.solved = true;
          result.best_cost = found.cost;
          result.best_path = std::move(*found.path);
          result.improvements.push_back({now(), result.best_cost, result.best_path});
          done = config.stop_on_first;
        }
      }
    }

    if (outcome.batch_completed && !done) {
      ++batches_since_replan;
      if (replan_trigger(outcome) && !result.stats.sat_exhausted
          && batches_since_replan >= config.sampler.batch_budget && !plans.empty()) {
        // Block the newest plan at its first symbolically promised but
        // geometrically unreached state, then ask for a fresh plan. Older
        // plans stay active for sampling.
        const SymbolicPlan& latest = plans.back();
        int failed_step = -1;
        for (int j = 1; j <= latest.horizon; ++j) {
          if (modes.find_family(latest.states[static_cast<std::size_t>(j)]) < 0) {
            failed_step = j;
            break;
          }
        }
        if (failed_step > 0) {
          encoding.block_prefix(latest, failed_step);
          ++result.stats.prefix_blocks;
        } else {
          encoding.block_full_plan(latest);
          ++result.stats.full_blocks;
        }
        if (request_plan()) {
          batches_since_replan = 0;
        }
      }
    }
  }

  return finish();
}

}  // namespace tmitstar
