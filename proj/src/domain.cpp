#include "tmitstar/domain.hpp"

#include "tmitstar/predicates.hpp"

#include <algorithm>

namespace tmitstar {

auto eval_formula(const Formula& f, const DiscreteState& s) -> bool {
  switch (f.kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::Atom:
      return s.test(f.atom);
    case Formula::Kind::Not:
      return !eval_formula(f.children.front(), s);
    case Formula::Kind::And:
      return std::all_of(f.children.begin(), f.children.end(),
                         [&](const Formula& c) { return eval_formula(c, s); });
    case Formula::Kind::Or:
      return std::any_of(f.children.begin(), f.children.end(),
                         [&](const Formula& c) { return eval_formula(c, s); });
  }

  return false;
}

auto collect_atoms(const Formula& f, std::vector<int>& out) -> void {
  if (f.kind == Formula::Kind::Atom) {
    out.push_back(f.atom);
  }

  for (const auto& c : f.children) {
    collect_atoms(c, out);
  }
}

auto Problem::discrete_index(const std::string& symbol) const -> int {
  for (std::size_t i = 0; i < discrete_symbols.size(); ++i) {
    if (discrete_symbols[i] == symbol) {
      return static_cast<int>(i);
    }
  }

  return -1;
}

auto Problem::geo_index(const GeoSymbol& sym) const -> int {
  for (std::size_t i = 0; i < geo_symbols.size(); ++i) {
    if (geo_symbols[i] == sym) {
      return static_cast<int>(i);
    }
  }

  return -1;
}

auto Problem::initial_state() const -> HybridState {
  HybridState q;
  q.robot_config = scene.robot_start;
  q.object_poses.reserve(scene.objects.size());
  for (const auto& o : scene.objects) {
    q.object_poses.push_back(o.start_pose);
  }

  q.discrete = init_discrete;
  return q;
}

namespace {

// For error reporting only: locate one unsatisfied positive atom in a
// conjunction-shaped formula.
auto find_unsatisfied_atom(const Formula& f, const DiscreteState& s) -> int {
  if (f.kind == Formula::Kind::Atom && !s.test(f.atom)) {
    return f.atom;
  }

  if (f.kind == Formula::Kind::And) {
    for (const auto& c : f.children) {
      const int a = find_unsatisfied_atom(c, s);
      if (a >= 0) {
        return a;
      }
    }
  }

  return -1;
}

}  // namespace

auto precondition_holds(const Problem& problem, const GroundAction& action, const HybridState& q,
                        double eps) -> bool {
  if (!eval_formula(action.discrete_pre, q.discrete)) {
    return false;
  }

  for (const int g : action.geo_pre) {
    if (geo_distance(problem.geo_symbols[static_cast<std::size_t>(g)], q, problem.scene) > eps) {
      return false;
    }
  }

  return true;
}

auto goal_holds(const Problem& problem, const HybridState& q, double eps) -> bool {
  if (!eval_formula(problem.goal.discrete, q.discrete)) {
    return false;
  }

  for (const int g : problem.goal.geometric) {
    if (geo_distance(problem.geo_symbols[static_cast<std::size_t>(g)], q, problem.scene) > eps) {
      return false;
    }
  }

  return true;
}

auto apply_effect(const Problem& problem, const GroundAction& action, const HybridState& q)
    -> HybridState {
  if (!eval_formula(action.discrete_pre, q.discrete)) {
    const int atom = find_unsatisfied_atom(action.discrete_pre, q.discrete);
    throw PreconditionError(action.name, atom >= 0
                                             ? problem.discrete_symbols[static_cast<std::size_t>(atom)]
                                             : "discrete precondition");
  }

  for (const int g : action.geo_pre) {
    const auto& sym = problem.geo_symbols[static_cast<std::size_t>(g)];
    if (geo_distance(sym, q, problem.scene) > kSatisfactionTol) {
      throw PreconditionError(action.name, sym.name);
    }
  }

  HybridState out = q;
  for (const int a : action.del) {
    out.discrete.set(a, false);
  }

  for (const int a : action.add) {
    out.discrete.set(a, true);
  }

  switch (action.continuous) {
    case ContinuousEffect::Attach:
      out.attached = Attachment{
          action.object,
          q.object_poses[static_cast<std::size_t>(action.object)] - q.robot_pos()};
      break;
    case ContinuousEffect::Detach:
      out.attached.reset();
      break;
    case ContinuousEffect::None:
      break;
  }

  return out;
}

namespace {

// Positive atoms every satisfying assignment must set: literals reachable
// through conjunctions only. Disjunctive or negated subtrees promise nothing.
auto required_atoms(const Formula& f, std::vector<int>& out) -> void {
  if (f.kind == Formula::Kind::Atom) {
    out.push_back(f.atom);
  } else if (f.kind == Formula::Kind::And) {
    for (const auto& c : f.children) {
      required_atoms(c, out);
    }
  }
}

}  // namespace

SolutionBound::SolutionBound(const Problem& problem)
    : problem_(&problem),
      start_(problem.scene.robot_start.head<2>()),
      reach_slack_(problem.scene.grasp_reach + 1e-5) {
  std::vector<int> atoms;
  required_atoms(problem.goal.discrete, atoms);
  const int n_objects = static_cast<int>(problem.scene.objects.size());
  const int n_regions = static_cast<int>(problem.scene.regions.size());
  for (int o = 0; o < n_objects; ++o) {
    for (int r = 0; r < n_regions; ++r) {
      const int sym = problem.discrete_index(
          "on(" + problem.scene.objects[static_cast<std::size_t>(o)].id + ","
          + problem.scene.regions[static_cast<std::size_t>(r)].id + ")");
      if (sym >= 0 && std::find(atoms.begin(), atoms.end(), sym) != atoms.end()) {
        place_goals_.push_back(
            {sym, -1, o, problem.scene.regions[static_cast<std::size_t>(r)].rect});
      }
    }
  }

  for (const int g : problem.goal.geometric) {
    const auto& sym = problem.geo_symbols[static_cast<std::size_t>(g)];
    switch (sym.kind) {
      case GeoPredKind::Near:
        near_goals_.push_back(sym.object);
        break;
      case GeoPredKind::InRegion:
        place_goals_.push_back({-1, g, sym.object,
                                problem.scene.regions[static_cast<std::size_t>(sym.region)].rect});
        break;
      case GeoPredKind::RobotInRegion:
        robot_region_goals_.push_back(
            problem.scene.regions[static_cast<std::size_t>(sym.region)].rect);
        break;
    }
  }
}

auto SolutionBound::operator()(const HybridState& q) const -> double {
  const Vec2 robot = q.robot_pos();
  const auto held = [&](int object) { return q.attached && q.attached->object == object; };
  double owed = 0.0;
  for (const auto& g : place_goals_) {
    const bool met =
        g.symbol >= 0
            ? q.discrete.test(g.symbol)
            : geo_distance(problem_->geo_symbols[static_cast<std::size_t>(g.geo)], q,
                           problem_->scene)
                  <= kSatisfactionTol;
    if (met) {
      continue;
    }

    owed = std::max(owed, dist_to_rect(robot, g.target) - reach_slack_);
    if (!held(g.object)) {
      owed = std::max(owed,
                      (robot - q.object_poses[static_cast<std::size_t>(g.object)]).norm()
                          - reach_slack_);
    }
  }

  for (const int o : near_goals_) {
    if (!held(o)) {
      owed = std::max(owed,
                      (robot - q.object_poses[static_cast<std::size_t>(o)]).norm() - reach_slack_);
    }
  }

  for (const auto& rect : robot_region_goals_) {
    owed = std::max(owed, dist_to_rect(robot, rect));
  }

  return (robot - start_).norm() + std::max(0.0, owed);
}

auto make_relaxed_problem(const Problem& problem) -> RelaxedProblem {
  RelaxedProblem r;
  r.domain.symbols = problem.discrete_symbols;
  r.domain.actions.reserve(problem.actions.size());
  for (const auto& a : problem.actions) {
    r.domain.actions.push_back(DiscreteAction{a.name, a.discrete_pre, a.add, a.del});
  }

  r.init = problem.init_discrete;
  r.goal = problem.goal.discrete;
  return r;
}

}  // namespace tmitstar
