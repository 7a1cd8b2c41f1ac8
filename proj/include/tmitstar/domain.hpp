#pragma once

#include "tmitstar/discrete_state.hpp"
#include "tmitstar/hybrid_state.hpp"
#include "tmitstar/scene.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace tmitstar {

// Propositional formula over indices into a ground symbol table.
struct Formula {
  enum class Kind { True, Atom, Not, And, Or };

  Kind kind = Kind::True;
  int atom = -1;
  std::vector<Formula> children;

  static auto truth() -> Formula { return {}; }

  static auto atom_of(int i) -> Formula {
    Formula f;
    f.kind = Kind::Atom;
    f.atom = i;
    return f;
  }

  static auto negation(Formula f) -> Formula {
    Formula g;
    g.kind = Kind::Not;
    g.children.push_back(std::move(f));
    return g;
  }

  static auto conjunction(std::vector<Formula> fs) -> Formula {
    Formula g;
    g.kind = Kind::And;
    g.children = std::move(fs);
    return g;
  }

  static auto disjunction(std::vector<Formula> fs) -> Formula {
    Formula g;
    g.kind = Kind::Or;
    g.children = std::move(fs);
    return g;
  }

  [[nodiscard]] auto operator==(const Formula& o) const -> bool = default;
};

[[nodiscard]] auto eval_formula(const Formula& f, const DiscreteState& s) -> bool;
auto collect_atoms(const Formula& f, std::vector<int>& out) -> void;

enum class GeoPredKind { Near, InRegion, RobotInRegion };

// Ground geometric predicate. Unlike discrete symbols, these carry a
// differentiable distance-to-satisfaction function over the hybrid state.
struct GeoSymbol {
  GeoPredKind kind = GeoPredKind::Near;
  int object = -1;
  int region = -1;
  std::string name;

  [[nodiscard]] auto operator==(const GeoSymbol& o) const -> bool {
    return kind == o.kind && object == o.object && region == o.region;
  }
};

enum class ContinuousEffect { None, Attach, Detach };

// Fully instantiated action: a discrete precondition formula, a conjunction of
// geometric precondition members, discrete add/delete effects, and an optional
// attachment change.
struct GroundAction {
  int id = -1;
  std::string name;
  int schema = -1;
  int object = -1;
  int region = -1;
  Formula discrete_pre;
  std::vector<int> geo_pre;
  std::vector<int> add;
  std::vector<int> del;
  ContinuousEffect continuous = ContinuousEffect::None;
};

struct Goal {
  Formula discrete;
  std::vector<int> geometric;  // conjunction of geometric symbol ids
};

// Purely discrete planning domain; the symbolic layer sees nothing else.
struct DiscreteAction {
  std::string name;
  Formula pre;
  std::vector<int> add;
  std::vector<int> del;
};

struct DiscreteDomain {
  std::vector<std::string> symbols;
  std::vector<DiscreteAction> actions;
};

struct ActionSchemaInfo {
  std::string name;
  ContinuousEffect continuous = ContinuousEffect::None;
};

// A complete planning problem: workspace geometry, ground symbol tables, the
// grounded action set, and the initial/goal specification.
struct Problem {
  Scene scene;
  std::vector<std::string> discrete_symbols;
  std::vector<GeoSymbol> geo_symbols;
  std::vector<ActionSchemaInfo> schemas;
  std::vector<GroundAction> actions;
  DiscreteState init_discrete;
  std::vector<std::string> init_names;  // as declared, for serialization
  Goal goal;
  std::string name;

  [[nodiscard]] auto discrete_index(const std::string& name) const -> int;
  [[nodiscard]] auto geo_index(const GeoSymbol& sym) const -> int;
  [[nodiscard]] auto initial_state() const -> HybridState;
};

class PreconditionError : public std::runtime_error {
public:
  PreconditionError(const std::string& action, const std::string& symbol)
      : std::runtime_error("action " + action + " precondition violated: " + symbol),
        action_name(action),
        symbol_name(symbol) {}

  std::string action_name;
  std::string symbol_name;
};

// Applies an action's discrete and attachment effects. Throws
// PreconditionError (naming the violated symbol or formula) when the full
// precondition does not hold at `q`.
[[nodiscard]] auto apply_effect(const Problem& problem, const GroundAction& action,
                                const HybridState& q) -> HybridState;

// Full precondition check: discrete formula plus every geometric member
// within `eps` of its zero set.
[[nodiscard]] auto precondition_holds(const Problem& problem, const GroundAction& action,
                                      const HybridState& q, double eps) -> bool;

[[nodiscard]] auto goal_holds(const Problem& problem, const HybridState& q, double eps) -> bool;

// Admissible lower bound on the cost of any solution whose motion visits a
// given state: straight-line distance from the start plus the farthest trip
// the robot still owes to an unmet goal conjunct. Objects only move while
// carried, so an unmet on/in_region conjunct forces the robot to come within
// grasp reach of the object's current pose (to pick it) and of the target
// region (to place it). Used to discard samples that cannot improve on an
// incumbent solution.
class SolutionBound {
public:
  explicit SolutionBound(const Problem& problem);

  [[nodiscard]] auto operator()(const HybridState& q) const -> double;

private:
  struct PlaceGoal {
    int symbol = -1;  // discrete on() conjunct, or -1 when geometric
    int geo = -1;     // geometric in_region conjunct, or -1 when discrete
    int object = -1;
    Rect target;
  };

  const Problem* problem_;
  Vec2 start_;
  double reach_slack_ = 0.0;  // grasp reach plus satisfaction tolerance
  std::vector<PlaceGoal> place_goals_;
  std::vector<int> near_goals_;           // objects of goal near() conjuncts
  std::vector<Rect> robot_region_goals_;  // goal robot_in_region() conjuncts
};

// Projection of the problem onto its discrete layer. Geometric symbols are
// dropped wholesale, so the symbolic encoding cannot mention them.
struct RelaxedProblem {
  DiscreteDomain domain;
  DiscreteState init;
  Formula goal;
};

[[nodiscard]] auto make_relaxed_problem(const Problem& problem) -> RelaxedProblem;

constexpr double kSatisfactionTol = 1e-6;

}  // namespace tmitstar
