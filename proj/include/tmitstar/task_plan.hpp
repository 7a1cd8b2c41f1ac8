#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/sat_solver.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace tmitstar {

constexpr int kNullStep = -1;

// A bounded-horizon action sequence together with the discrete states it
// induces. Steps may be the null action, which changes nothing; `index` is
// the enumeration position among all plans produced by one encoding.
struct SymbolicPlan {
  int horizon = 0;
  std::vector<int> actions;          // per step, action id or kNullStep
  std::vector<DiscreteState> states; // length horizon + 1; states[0] = init
  int index = 0;

  [[nodiscard]] auto real_action_count() const -> int;
  [[nodiscard]] auto operator==(const SymbolicPlan& o) const -> bool {
    return actions == o.actions;
  }
};

struct SimulationResult {
  bool ok = true;
  int failed_step = -1;  // 1-based step whose precondition failed
  DiscreteState final_state;
};

// Replays a plan's discrete semantics from `init`, independently of any
// encoding. Fails at the first step whose precondition is unsatisfied.
[[nodiscard]] auto simulate_discrete(const DiscreteDomain& domain, const DiscreteState& init,
                                     const SymbolicPlan& plan) -> SimulationResult;

struct EncodingStats {
  int vars = 0;
  std::size_t clauses = 0;
};

// Bounded-horizon planning as satisfiability, grown one step at a time.
// Horizons never shrink: each solve extends the current encoding and asks for
// the goal at successive horizons under an assumption literal, so learned
// clauses and blocked plans persist across queries. Blocking is permanent.
class PlanningEncoding {
public:
  PlanningEncoding(DiscreteDomain domain, DiscreteState init, Formula goal,
                   std::uint64_t noise_seed = 0);

  // Returns a satisfying plan of minimal horizon >= the current horizon that
  // avoids every blocked assignment, or nullopt when no such plan exists up
  // to max_horizon.
  auto solve_next_plan(int max_horizon) -> std::optional<SymbolicPlan>;

  // Excludes this exact step-by-step assignment (null steps included).
  auto block_full_plan(const SymbolicPlan& plan) -> void;

  // Excludes every plan sharing the assignment on steps 1..failed_step.
  auto block_prefix(const SymbolicPlan& plan, int failed_step) -> void;

  [[nodiscard]] auto horizon() const -> int { return horizon_; }
  [[nodiscard]] auto stats() const -> EncodingStats {
    return {solver_.num_vars(), solver_.num_clauses()};
  }

  // Exposed for structural checks: the encoding's symbol variables range over
  // exactly the discrete symbol table, per step.
  [[nodiscard]] auto symbol_var(int symbol, int step) const -> sat::Var {
    return symbol_vars_[static_cast<std::size_t>(step)][static_cast<std::size_t>(symbol)];
  }

private:
  auto add_step() -> void;
  auto goal_assumption(int h) -> sat::Lit;
  auto encode_formula(const Formula& f, int step) -> sat::Lit;
  [[nodiscard]] auto action_lit(int step, int action) const -> sat::Lit;
  [[nodiscard]] auto true_lit() const -> sat::Lit { return sat::pos(true_var_); }

  DiscreteDomain domain_;
  DiscreteState init_;
  Formula goal_;
  sat::Solver solver_;
  int horizon_ = 0;
  int plan_counter_ = 0;
  sat::Var true_var_ = 0;
  std::vector<std::vector<sat::Var>> symbol_vars_;  // [step][symbol]
  std::vector<std::vector<sat::Var>> action_vars_;  // [step-1][action]; last is the null action
  std::unordered_map<int, sat::Lit> goal_assumptions_;
  std::vector<std::vector<int>> adders_;   // per symbol
  std::vector<std::vector<int>> deleters_; // per symbol
  bool block_empty_pending_ = false;
};

}  // namespace tmitstar
