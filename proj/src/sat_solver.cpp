#include "tmitstar/sat_solver.hpp"

#include "tmitstar/rng.hpp"

#include <algorithm>

namespace tmitstar::sat {

namespace {

// Luby restart sequence, scaled by the base conflict budget.
auto luby(std::uint64_t i) -> std::uint64_t {
  std::uint64_t k = 1;
  while ((1ULL << (k + 1)) <= i + 1) {
    ++k;
  }

  while ((1ULL << k) - 1 != i + 1) {
    i -= (1ULL << k) - 1;
    k = 1;
    while ((1ULL << (k + 1)) <= i + 1) {
      ++k;
    }
  }

  return 1ULL << (k - 1);
}

}  // namespace

auto Solver::new_var() -> Var {
  const Var v = static_cast<Var>(assigns_.size());
  assigns_.push_back(Value::Undef);
  levels_.push_back(0);
  reasons_.push_back(-1);
  activity_.push_back(0.0);
  saved_phase_.push_back(0);
  seen_.push_back(0);
  watches_.emplace_back();
  watches_.emplace_back();
  return v;
}

auto Solver::set_polarity_noise(double probability, std::uint64_t seed) -> void {
  polarity_noise_ = probability;
  noise_state_ = seed ^ 0x243f6a8885a308d3ULL;
}

auto Solver::attach(int clause_idx) -> void {
  const auto& c = clauses_[static_cast<std::size_t>(clause_idx)].lits;
  watches_[(~c[0]).index()].push_back({clause_idx, c[1]});
  watches_[(~c[1]).index()].push_back({clause_idx, c[0]});
}

auto Solver::add_clause(std::vector<Lit> lits) -> bool {
  if (!ok_) {
    return false;
  }

  ++n_input_clauses_;
  std::sort(lits.begin(), lits.end());
  std::vector<Lit> out;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i > 0 && lits[i] == lits[i - 1]) {
      continue;
    }

    if (i + 1 < lits.size() && lits[i + 1] == ~lits[i]) {
      return true;  // tautology
    }

    // Root-level simplification.
    if (levels_[static_cast<std::size_t>(lits[i].var())] == 0) {
      const Value v = lit_value(lits[i]);
      if (v == Value::True) {
        return true;
      }

      if (v == Value::False) {
        continue;
      }
    }

    out.push_back(lits[i]);
  }

  if (out.empty()) {
    ok_ = false;
    return false;
  }

  if (out.size() == 1) {
    if (decision_level() != 0) {
      cancel_until(0);
    }

    enqueue(out[0], -1);
    if (propagate() >= 0) {
      ok_ = false;
      return false;
    }

    return true;
  }

  clauses_.push_back({std::move(out)});
  attach(static_cast<int>(clauses_.size()) - 1);
  return true;
}

auto Solver::enqueue(Lit p, int reason) -> void {
  const auto v = static_cast<std::size_t>(p.var());
  assigns_[v] = p.negated() ? Value::False : Value::True;
  levels_[v] = decision_level();
  reasons_[v] = reason;
  saved_phase_[v] = p.negated() ? 0 : 1;
  trail_.push_back(p);
}

auto Solver::propagate() -> int {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    auto& ws = watches_[p.index()];
    std::size_t keep = 0;
    for (std::size_t i = 0; i < ws.size(); ++i) {
      const Watcher w = ws[i];
      if (lit_value(w.blocker) == Value::True) {
        ws[keep++] = w;
        continue;
      }

      auto& lits = clauses_[static_cast<std::size_t>(w.clause)].lits;
      const Lit false_lit = ~p;
      if (lits[0] == false_lit) {
        std::swap(lits[0], lits[1]);
      }

      if (lit_value(lits[0]) == Value::True) {
        ws[keep++] = {w.clause, lits[0]};
        continue;
      }

      bool moved = false;
      for (std::size_t k = 2; k < lits.size(); ++k) {
        if (lit_value(lits[k]) != Value::False) {
          std::swap(lits[1], lits[k]);
          watches_[(~lits[1]).index()].push_back({w.clause, lits[0]});
          moved = true;
          break;
        }
      }

      if (moved) {
        continue;
      }

      // Unit or conflicting.
      ws[keep++] = w;
      if (lit_value(lits[0]) == Value::False) {
        for (++i; i < ws.size(); ++i) {
          ws[keep++] = ws[i];
        }

        ws.resize(keep);
        qhead_ = trail_.size();
        return w.clause;
      }

      enqueue(lits[0], w.clause);
    }

    ws.resize(keep);
  }

  return -1;
}

auto Solver::bump(Var v) -> void {
  activity_[static_cast<std::size_t>(v)] += var_inc_;
  if (activity_[static_cast<std::size_t>(v)] > 1e100) {
    for (auto& a : activity_) {
      a *= 1e-100;
    }

    var_inc_ *= 1e-100;
  }
}

auto Solver::decay() -> void { var_inc_ /= 0.95; }

auto Solver::analyze(int conflict, std::vector<Lit>& learnt) -> int {
  learnt.clear();
  learnt.emplace_back();  // slot for the asserting literal

  int counter = 0;
  Lit p;
  int idx = static_cast<int>(trail_.size()) - 1;
  int reason = conflict;

  do {
    const auto& lits = clauses_[static_cast<std::size_t>(reason)].lits;
    for (const Lit q : lits) {
      if (reason != conflict && q == p) {
        continue;
      }

      const auto v = static_cast<std::size_t>(q.var());
      if (seen_[v] == 0 && levels_[v] > 0) {
        seen_[v] = 1;
        bump(q.var());
        if (levels_[v] >= decision_level()) {
          ++counter;
        } else {
          learnt.push_back(q);
        }
      }
    }

    while (seen_[static_cast<std::size_t>(trail_[static_cast<std::size_t>(idx)].var())] == 0) {
      --idx;
    }

    p = trail_[static_cast<std::size_t>(idx)];
    seen_[static_cast<std::size_t>(p.var())] = 0;
    reason = reasons_[static_cast<std::size_t>(p.var())];
    --idx;
    --counter;
  } while (counter > 0);

  learnt[0] = ~p;

  int back_level = 0;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    back_level = std::max(back_level, levels_[static_cast<std::size_t>(learnt[i].var())]);
  }

  for (const Lit q : learnt) {
    seen_[static_cast<std::size_t>(q.var())] = 0;
  }

  return back_level;
}

auto Solver::cancel_until(int level) -> void {
  if (decision_level() <= level) {
    return;
  }

  const auto bound = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(level)]);
  for (std::size_t i = trail_.size(); i > bound; --i) {
    const auto v = static_cast<std::size_t>(trail_[i - 1].var());
    assigns_[v] = Value::Undef;
    reasons_[v] = -1;
  }

  trail_.resize(bound);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = bound;
}

auto Solver::pick_branch_var() -> Var {
  Var best = -1;
  double best_activity = -1.0;
  for (std::size_t v = 0; v < assigns_.size(); ++v) {
    if (assigns_[v] == Value::Undef && activity_[v] > best_activity) {
      best = static_cast<Var>(v);
      best_activity = activity_[v];
    }
  }

  return best;
}

auto Solver::solve(const std::vector<Lit>& assumptions) -> bool {
  if (!ok_) {
    return false;
  }

  cancel_until(0);
  if (propagate() >= 0) {
    ok_ = false;
    return false;
  }

  std::uint64_t restart_index = 0;
  std::uint64_t budget = 100 * luby(restart_index);
  std::uint64_t conflicts_this_restart = 0;
  std::vector<Lit> learnt;

  while (true) {
    const int conflict = propagate();
    if (conflict >= 0) {
      ++conflicts_;
      ++conflicts_this_restart;
      if (decision_level() == 0) {
        ok_ = false;
        return false;
      }

      const int back_level = analyze(conflict, learnt);
      cancel_until(back_level);
      if (learnt.size() == 1) {
        if (decision_level() != 0) {
          cancel_until(0);
        }

        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back({learnt});
        ++n_learnt_clauses_;
        const int idx = static_cast<int>(clauses_.size()) - 1;
        // Ensure the second watch sits at the backjump level.
        auto& lits = clauses_.back().lits;
        for (std::size_t i = 2; i < lits.size(); ++i) {
          if (levels_[static_cast<std::size_t>(lits[i].var())]
              > levels_[static_cast<std::size_t>(lits[1].var())]) {
            std::swap(lits[1], lits[i]);
          }
        }

        attach(idx);
        enqueue(lits[0], idx);
      }

      decay();
      continue;
    }

    if (conflicts_this_restart >= budget) {
      conflicts_this_restart = 0;
      budget = 100 * luby(++restart_index);
      cancel_until(0);
      continue;
    }

    if (decision_level() < static_cast<int>(assumptions.size())) {
      const Lit p = assumptions[static_cast<std::size_t>(decision_level())];
      if (lit_value(p) == Value::False) {
        return false;  // assumptions are jointly inconsistent with the clauses
      }

      trail_lim_.push_back(static_cast<int>(trail_.size()));
      if (lit_value(p) == Value::Undef) {
        enqueue(p, -1);
      }

      continue;
    }

    const Var v = pick_branch_var();
    if (v < 0) {
      return true;
    }

    bool phase = saved_phase_[static_cast<std::size_t>(v)] != 0;
    if (polarity_noise_ > 0.0
        && static_cast<double>(splitmix64(noise_state_) >> 11U) * 0x1.0p-53
               < polarity_noise_) {
      phase = (splitmix64(noise_state_) & 1U) != 0;
    }

    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue({v, !phase}, -1);
  }
}

}  // namespace tmitstar::sat
