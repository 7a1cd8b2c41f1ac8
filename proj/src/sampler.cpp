#include "tmitstar/sampler.hpp"

#include "tmitstar/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace tmitstar {

auto replan_trigger(const BatchOutcome& outcome) -> bool { return outcome.replan_wanted; }

BatchSampler::BatchSampler(const Problem& problem, SamplerConfig config, std::uint64_t seed)
    : problem_(&problem),
      config_(config),
      bound_(problem),
      rng_(seed),
      attempt_budget_(config.initial_attempt_budget) {}

auto BatchSampler::push_mode(int mode) -> void {
  while (static_cast<int>(in_queue_.size()) <= mode) {
    in_queue_.push_back(0);
    quota_.push_back(0);
  }

  if (in_queue_[static_cast<std::size_t>(mode)] != 0) {
    return;
  }

  in_queue_[static_cast<std::size_t>(mode)] = 1;
  queue_.push_back(mode);
  trace_.emplace_back('+', mode);
}

auto BatchSampler::pop_mode() -> int {
  const int mode = queue_.back();
  queue_.pop_back();
  in_queue_[static_cast<std::size_t>(mode)] = 0;
  trace_.emplace_back('-', mode);
  return mode;
}

auto BatchSampler::seed_queue(const ModeSet& modes) -> void {
  trace_.clear();
  quota_.assign(static_cast<std::size_t>(modes.size()), 0);
  in_queue_.assign(static_cast<std::size_t>(modes.size()), 0);

  // Oldest first, so the most recently reached mode pops first.
  std::vector<int> order(static_cast<std::size_t>(modes.size()));
  for (int m = 0; m < modes.size(); ++m) {
    order[static_cast<std::size_t>(m)] = m;
  }

  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return modes.mode(a).reached_at < modes.mode(b).reached_at; });
  for (const int m : order) {
    push_mode(m);
  }

  batch_active_ = true;
}

auto BatchSampler::gate_threshold(const SearchGraph& graph, int mode) const -> double {
  return config_.mu.value_or(graph.radius(mode));
}

auto BatchSampler::viable_actions(const Mode& mode, const std::vector<SymbolicPlan>& plans) const
    -> std::vector<int> {
  std::vector<int> out;
  const auto remaining = [&](int action) {
    const auto it = mode.attempts_used.find(action);
    const int used = it == mode.attempts_used.end() ? 0 : it->second;
    return attempt_budget_ - used;
  };
  const auto add_unique = [&](int action) {
    if (std::find(out.begin(), out.end(), action) == out.end() && remaining(action) > 0) {
      out.push_back(action);
    }
  };

  for (const auto& plan : plans) {
    for (int j = 1; j <= plan.horizon; ++j) {
      const int a = plan.actions[static_cast<std::size_t>(j - 1)];
      if (a == kNullStep) {
        continue;
      }

      if (plan.states[static_cast<std::size_t>(j - 1)] == mode.assignment) {
        add_unique(a);
      }
    }
  }

  // Geometric goals are projected like an action whenever the family already
  // satisfies the discrete goal.
  if (!problem_->goal.geometric.empty()
      && eval_formula(problem_->goal.discrete, mode.assignment)) {
    add_unique(kGoalAction);
  }

  return out;
}

auto BatchSampler::any_viable(const ModeSet& modes, const std::vector<SymbolicPlan>& plans) const
    -> bool {
  for (int m = 0; m < modes.size(); ++m) {
    if (!viable_actions(modes.mode(m), plans).empty()) {
      return true;
    }
  }

  return false;
}

auto BatchSampler::increase_budget(const ModeSet& modes, const std::vector<SymbolicPlan>& plans)
    -> void {
  if (any_viable(modes, plans)) {
    throw std::logic_error("increase_budget called while some action is still viable");
  }

  ++attempt_budget_;
}

auto BatchSampler::sample_valid_config(const Mode& mode) -> std::optional<Config> {
  const auto& bounds = problem_->scene.bounds;
  std::uniform_real_distribution<double> ux(bounds.lo.x(), bounds.hi.x());
  std::uniform_real_distribution<double> uy(bounds.lo.y(), bounds.hi.y());

  HybridState probe = mode.instantiate(problem_->scene.robot_start);
  Config c(2);
  for (int tries = 0; tries < config_.max_rejections; ++tries) {
    c << ux(rng_), uy(rng_);
    probe.set_robot_config(c);
    if (is_valid(probe, problem_->scene)) {
      return c;
    }
  }

  if (!rejection_warned_) {
    rejection_warned_ = true;
    std::cerr << "warning: rejection sampling exhausted " << config_.max_rejections
              << " draws in mode " << mode.id << "; skipping its quota this batch\n";
  }

  return std::nullopt;
}

auto BatchSampler::sample_batch(ModeSet& modes, SearchGraph& graph,
                                const std::vector<SymbolicPlan>& plans,
                                const std::function<bool()>& should_stop, double incumbent)
    -> BatchOutcome {
  BatchOutcome out;
  const bool pruning = std::isfinite(incumbent);
  const auto pruned = [&](const HybridState& state) {
    if (pruning && bound_(state) >= incumbent) {
      ++samples_pruned_;
      return true;
    }

    return false;
  };

  if (!batch_active_) {
    seed_queue(modes);
  }

  while (!queue_.empty()) {
    const int m = pop_mode();
    while (quota_[static_cast<std::size_t>(m)] < config_.batch_size) {
      if (should_stop && should_stop()) {
        // Leave the queue suspended; the caller's budget expired.
        push_mode(m);
        return out;
      }

      const auto config = sample_valid_config(modes.mode(m));
      if (!config) {
        quota_[static_cast<std::size_t>(m)] = config_.batch_size;
        break;
      }

      ++quota_[static_cast<std::size_t>(m)];
      const HybridState state = modes.mode(m).instantiate(*config);
      if (pruned(state)) {
        continue;
      }

      const bool is_goal = goal_holds(*problem_, state, kSatisfactionTol);
      ++out.new_vertices;
      graph.add_vertex(state, m, is_goal);
      if (is_goal) {
        out.goal_sample_found = true;
        out.at_goal = true;
        push_mode(m);  // resume this mode's quota on the next call
        return out;
      }

      const double mu = gate_threshold(graph, m);
      for (const int action : viable_actions(modes.mode(m), plans)) {
        const auto& members = action == kGoalAction
                                  ? problem_->goal.geometric
                                  : problem_->actions[static_cast<std::size_t>(action)].geo_pre;
        if (conjunction_distance(*problem_, members, state) >= mu) {
          continue;
        }

        ++total_gated_calls_;
        modes.mode(m).attempts_used[action] += 1;
        ++out.projections;
        ++total_projections_;
        const auto projected = project_to_manifold(*problem_, members, state);
        if (projected.status != ProjectionStatus::Success) {
          continue;
        }

        ++out.projection_successes;
        if (action == kGoalAction) {
          if (pruned(projected.state)) {
            continue;
          }

          // The projected state satisfies the whole goal: its family passes
          // the discrete part and the members are on their zero set.
          ++out.new_vertices;
          graph.add_vertex(projected.state, m, true);
          out.goal_sample_found = true;
          out.at_goal = true;
          push_mode(m);
          return out;
        }

        const auto& ground = problem_->actions[static_cast<std::size_t>(action)];
        const HybridState effect = apply_effect(*problem_, ground, projected.state);
        if (!is_valid(effect, problem_->scene)) {
          continue;
        }

        // Both ends of the transition must clear the bound, or the pair is
        // dead weight.
        if (pruned(projected.state) || pruned(effect)) {
          continue;
        }

        const int before = modes.size();
        const int pvid = graph.add_vertex(projected.state, m,
                                          goal_holds(*problem_, projected.state, kSatisfactionTol));
        ++out.new_vertices;
        const int to_vid = mark_reachable(*problem_, modes, graph, pvid, action);
        ++out.new_vertices;
        ++out.new_transitions;
        if (modes.size() > before) {
          push_mode(graph.vertex(to_vid).mode);
        }

        if (graph.vertex(to_vid).goal) {
          out.goal_sample_found = true;
          out.at_goal = true;
          push_mode(m);
          return out;
        }
      }
    }
  }

  batch_active_ = false;
  ++batches_completed_;
  out.batch_completed = true;
  out.no_viable_actions = !any_viable(modes, plans);
  if (out.no_viable_actions) {
    ++attempt_budget_;
    out.budget_increased = true;
  }

  out.at_goal = !graph.goal_vertices().empty();
  out.replan_wanted = !out.at_goal || !any_viable(modes, plans);
  return out;
}

}  // namespace tmitstar
