#pragma once

#include <cstdint>
#include <vector>

namespace tmitstar::sat {

using Var = int;

struct Lit {
  int code = -2;

  Lit() = default;
  Lit(Var v, bool negated) : code(2 * v + (negated ? 1 : 0)) {}

  [[nodiscard]] auto var() const -> Var { return code >> 1; }
  [[nodiscard]] auto negated() const -> bool { return (code & 1) != 0; }
  [[nodiscard]] auto index() const -> std::size_t { return static_cast<std::size_t>(code); }
  [[nodiscard]] auto operator~() const -> Lit {
    Lit l;
    l.code = code ^ 1;
    return l;
  }

  [[nodiscard]] auto operator==(const Lit& o) const -> bool = default;
  [[nodiscard]] auto operator<(const Lit& o) const -> bool { return code < o.code; }
};

[[nodiscard]] inline auto pos(Var v) -> Lit { return {v, false}; }
[[nodiscard]] inline auto neg(Var v) -> Lit { return {v, true}; }

enum class Value : std::uint8_t { False = 0, True = 1, Undef = 2 };

// Conflict-driven clause-learning solver: two-watched-literal propagation,
// activity-driven decisions, first-UIP learning with non-chronological
// backjumping, phase saving, Luby restarts, and solving under assumptions.
// Everything is deterministic for a fixed sequence of calls and seed.
class Solver {
public:
  auto new_var() -> Var;

  // Returns false when the clause makes the formula trivially unsatisfiable.
  auto add_clause(std::vector<Lit> lits) -> bool;

  // Decides satisfiability of the clause set under the given assumptions.
  auto solve(const std::vector<Lit>& assumptions = {}) -> bool;

  [[nodiscard]] auto value(Var v) const -> Value {
    return assigns_[static_cast<std::size_t>(v)];
  }

  [[nodiscard]] auto model_holds(Lit l) const -> bool {
    const Value v = value(l.var());
    return v != Value::Undef && (v == Value::True) != l.negated();
  }

  [[nodiscard]] auto num_vars() const -> int { return static_cast<int>(assigns_.size()); }
  [[nodiscard]] auto num_clauses() const -> std::size_t { return n_input_clauses_; }
  [[nodiscard]] auto num_learnt() const -> std::size_t { return n_learnt_clauses_; }
  [[nodiscard]] auto conflicts() const -> std::uint64_t { return conflicts_; }
  [[nodiscard]] auto ok() const -> bool { return ok_; }

  // Probability of deciding a fresh variable with a random polarity instead
  // of the saved one; keeps enumeration seeded but reproducible.
  auto set_polarity_noise(double probability, std::uint64_t seed) -> void;

private:
  struct Clause {
    std::vector<Lit> lits;
  };

  struct Watcher {
    int clause = -1;
    Lit blocker;
  };

  auto enqueue(Lit p, int reason) -> void;
  auto propagate() -> int;
  auto analyze(int conflict, std::vector<Lit>& learnt) -> int;
  auto cancel_until(int level) -> void;
  auto pick_branch_var() -> Var;
  auto bump(Var v) -> void;
  auto decay() -> void;
  auto attach(int clause_idx) -> void;
  [[nodiscard]] auto decision_level() const -> int {
    return static_cast<int>(trail_lim_.size());
  }

  [[nodiscard]] auto lit_value(Lit p) const -> Value {
    const Value v = assigns_[static_cast<std::size_t>(p.var())];
    if (v == Value::Undef) {
      return Value::Undef;
    }

    return (v == Value::True) != p.negated() ? Value::True : Value::False;
  }

  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<Value> assigns_;
  std::vector<int> levels_;
  std::vector<int> reasons_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<std::uint8_t> saved_phase_;
  std::vector<std::uint8_t> seen_;

  bool ok_ = true;
  std::uint64_t conflicts_ = 0;
  std::size_t n_input_clauses_ = 0;
  std::size_t n_learnt_clauses_ = 0;
  double polarity_noise_ = 0.0;
  std::uint64_t noise_state_ = 0x243f6a8885a308d3ULL;
};

}  // namespace tmitstar::sat
