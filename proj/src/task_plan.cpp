#include "tmitstar/task_plan.hpp"

#include <algorithm>
#include <stdexcept>

namespace tmitstar {

auto SymbolicPlan::real_action_count() const -> int {
  return static_cast<int>(
      std::count_if(actions.begin(), actions.end(), [](int a) { return a != kNullStep; }));
}

auto simulate_discrete(const DiscreteDomain& domain, const DiscreteState& init,
                       const SymbolicPlan& plan) -> SimulationResult {
  SimulationResult result;
  DiscreteState state = init;
  for (int j = 0; j < plan.horizon; ++j) {
    const int a = plan.actions[static_cast<std::size_t>(j)];
    if (a == kNullStep) {
      continue;
    }

    const auto& action = domain.actions[static_cast<std::size_t>(a)];
    if (!eval_formula(action.pre, state)) {
      result.ok = false;
      result.failed_step = j + 1;
      return result;
    }

    for (const int s : action.del) {
      state.set(s, false);
    }

    for (const int s : action.add) {
      state.set(s, true);
    }
  }

  result.final_state = std::move(state);
  return result;
}

PlanningEncoding::PlanningEncoding(DiscreteDomain domain, DiscreteState init, Formula goal,
                                   std::uint64_t noise_seed)
    : domain_(std::move(domain)), init_(std::move(init)), goal_(std::move(goal)) {
  if (init_.size() != domain_.symbols.size()) {
    throw std::invalid_argument("initial state size does not match the symbol table");
  }

  if (noise_seed != 0) {
    solver_.set_polarity_noise(0.02, noise_seed);
  }

  true_var_ = solver_.new_var();
  solver_.add_clause({sat::pos(true_var_)});

  adders_.resize(domain_.symbols.size());
  deleters_.resize(domain_.symbols.size());
  for (std::size_t a = 0; a < domain_.actions.size(); ++a) {
    for (const int s : domain_.actions[a].add) {
      adders_[static_cast<std::size_t>(s)].push_back(static_cast<int>(a));
    }

    for (const int s : domain_.actions[a].del) {
      deleters_[static_cast<std::size_t>(s)].push_back(static_cast<int>(a));
    }
  }

  // Step 0 carries the initial assignment as unit clauses.
  auto& step0 = symbol_vars_.emplace_back();
  for (std::size_t s = 0; s < domain_.symbols.size(); ++s) {
    const sat::Var v = solver_.new_var();
    step0.push_back(v);
    solver_.add_clause({init_.test(static_cast<int>(s)) ? sat::pos(v) : sat::neg(v)});
  }
}

auto PlanningEncoding::action_lit(int step, int action) const -> sat::Lit {
  return sat::pos(
      action_vars_[static_cast<std::size_t>(step - 1)][static_cast<std::size_t>(action)]);
}

auto PlanningEncoding::encode_formula(const Formula& f, int step) -> sat::Lit {
  switch (f.kind) {
    case Formula::Kind::True:
      return true_lit();
    case Formula::Kind::Atom:
      return sat::pos(symbol_vars_[static_cast<std::size_t>(step)][static_cast<std::size_t>(f.atom)]);
    case Formula::Kind::Not:
      return ~encode_formula(f.children.front(), step);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      if (f.children.empty()) {
        return f.kind == Formula::Kind::And ? true_lit() : ~true_lit();
      }

      std::vector<sat::Lit> parts;
      parts.reserve(f.children.size());
      for (const auto& c : f.children) {
        parts.push_back(encode_formula(c, step));
      }

      const sat::Lit aux = sat::pos(solver_.new_var());
      if (f.kind == Formula::Kind::And) {
        std::vector<sat::Lit> back{aux};
        for (const sat::Lit p : parts) {
          solver_.add_clause({~aux, p});
          back.push_back(~p);
        }

        solver_.add_clause(std::move(back));
      } else {
        std::vector<sat::Lit> fwd{~aux};
        for (const sat::Lit p : parts) {
          solver_.add_clause({aux, ~p});
          fwd.push_back(p);
        }

        solver_.add_clause(std::move(fwd));
      }

      return aux;
    }
  }

  return true_lit();
}

auto PlanningEncoding::add_step() -> void {
  const int step = horizon_ + 1;
  const auto n_symbols = domain_.symbols.size();
  const auto n_actions = domain_.actions.size();

  auto& sym = symbol_vars_.emplace_back();
  for (std::size_t s = 0; s < n_symbols; ++s) {
    sym.push_back(solver_.new_var());
  }

  auto& act = action_vars_.emplace_back();
  for (std::size_t a = 0; a <= n_actions; ++a) {  // final slot is the null action
    act.push_back(solver_.new_var());
  }

  // Preconditions and effects.
  for (std::size_t a = 0; a < n_actions; ++a) {
    const sat::Lit al = action_lit(step, static_cast<int>(a));
    const sat::Lit pre = encode_formula(domain_.actions[a].pre, step - 1);
    solver_.add_clause({~al, pre});
    for (const int s : domain_.actions[a].add) {
      solver_.add_clause({~al, sat::pos(sym[static_cast<std::size_t>(s)])});
    }

    for (const int s : domain_.actions[a].del) {
      solver_.add_clause({~al, sat::neg(sym[static_cast<std::size_t>(s)])});
    }
  }

  // Frame axioms: a symbol changes only when a cause fires at this step.
  const auto& prev = symbol_vars_[static_cast<std::size_t>(step - 1)];
  for (std::size_t s = 0; s < n_symbols; ++s) {
    std::vector<sat::Lit> gained{sat::neg(sym[s]), sat::pos(prev[s])};
    for (const int a : adders_[s]) {
      gained.push_back(action_lit(step, a));
    }

    solver_.add_clause(std::move(gained));

    std::vector<sat::Lit> lost{sat::pos(sym[s]), sat::neg(prev[s])};
    for (const int a : deleters_[s]) {
      lost.push_back(action_lit(step, a));
    }

    solver_.add_clause(std::move(lost));
  }

  // Exactly one action per step: pairwise mutex when small, a sequential
  // counter otherwise.
  std::vector<sat::Lit> any;
  for (std::size_t a = 0; a <= n_actions; ++a) {
    any.push_back(sat::pos(act[a]));
  }

  solver_.add_clause(std::move(any));
  if (n_actions + 1 <= 30) {
    for (std::size_t i = 0; i + 1 <= n_actions; ++i) {
      for (std::size_t j = i + 1; j <= n_actions; ++j) {
        solver_.add_clause({sat::neg(act[i]), sat::neg(act[j])});
      }
    }
  } else {
    std::vector<sat::Var> carry;
    for (std::size_t a = 0; a <= n_actions; ++a) {
      carry.push_back(solver_.new_var());
    }

    for (std::size_t a = 0; a <= n_actions; ++a) {
      solver_.add_clause({sat::neg(act[a]), sat::pos(carry[a])});
      if (a > 0) {
        solver_.add_clause({sat::neg(carry[a - 1]), sat::pos(carry[a])});
        solver_.add_clause({sat::neg(act[a]), sat::neg(carry[a - 1])});
      }
    }
  }

  ++horizon_;
  if (block_empty_pending_ && step == 1) {
    block_empty_pending_ = false;
    solver_.add_clause({sat::neg(act[n_actions])});
  }
}

auto PlanningEncoding::goal_assumption(int h) -> sat::Lit {
  if (const auto it = goal_assumptions_.find(h); it != goal_assumptions_.end()) {
    return it->second;
  }

  const sat::Lit guard = sat::pos(solver_.new_var());
  const sat::Lit goal = encode_formula(goal_, h);
  solver_.add_clause({~guard, goal});
  goal_assumptions_.emplace(h, guard);
  return guard;
}

auto PlanningEncoding::solve_next_plan(int max_horizon) -> std::optional<SymbolicPlan> {
  for (int h = horizon_;; ++h) {
    if (h > max_horizon || !solver_.ok()) {
      return std::nullopt;
    }

    while (horizon_ < h) {
      add_step();
    }

    if (!solver_.solve({goal_assumption(h)})) {
      continue;
    }

    SymbolicPlan plan;
    plan.horizon = h;
    plan.index = plan_counter_++;
    const auto n_actions = domain_.actions.size();
    for (int j = 1; j <= h; ++j) {
      int chosen = kNullStep;
      for (std::size_t a = 0; a < n_actions; ++a) {
        if (solver_.model_holds(action_lit(j, static_cast<int>(a)))) {
          chosen = static_cast<int>(a);
          break;
        }
      }

      plan.actions.push_back(chosen);
    }

    for (int j = 0; j <= h; ++j) {
      DiscreteState s(domain_.symbols.size());
      for (std::size_t p = 0; p < domain_.symbols.size(); ++p) {
        s.set(static_cast<int>(p),
              solver_.model_holds(sat::pos(symbol_var(static_cast<int>(p), j))));
      }

      plan.states.push_back(std::move(s));
    }

    return plan;
  }
}

auto PlanningEncoding::block_prefix(const SymbolicPlan& plan, int failed_step) -> void {
  if (failed_step < 1 || failed_step > plan.horizon) {
    throw std::invalid_argument("block_prefix step out of range");
  }

  // One step must differ; with the per-step mutex this is equivalent to the
  // full assignment-difference clause.
  std::vector<sat::Lit> clause;
  const auto null_index = static_cast<int>(domain_.actions.size());
  for (int j = 1; j <= failed_step; ++j) {
    const int a = plan.actions[static_cast<std::size_t>(j - 1)];
    clause.push_back(~action_lit(j, a == kNullStep ? null_index : a));
  }

  solver_.add_clause(std::move(clause));
}

auto PlanningEncoding::block_full_plan(const SymbolicPlan& plan) -> void {
  if (plan.horizon == 0) {
    // Blocking the empty plan demands a real action at the first step; plans
    // with a purely-null prefix re-enter the enumeration left-shifted.
    if (horizon_ == 0) {
      block_empty_pending_ = true;
    } else {
      solver_.add_clause({~action_lit(1, static_cast<int>(domain_.actions.size()))});
    }

    return;
  }

  block_prefix(plan, plan.horizon);
}

}  // namespace tmitstar
