#include "tmitstar/validator.hpp"

#include "tmitstar/predicates.hpp"
#include "tmitstar/scene.hpp"

#include <cmath>
#include <string>

namespace tmitstar {

namespace {

constexpr double kPoseTol = 1e-9;

auto close(const Vec2& a, const Vec2& b) -> bool { return (a - b).norm() <= kPoseTol; }

auto states_match(const HybridState& a, const HybridState& b) -> bool {
  if (a.discrete != b.discrete || a.object_poses.size() != b.object_poses.size()) {
    return false;
  }
  if (a.attached.has_value() != b.attached.has_value()) {
    return false;
  }
  if (a.attached && (a.attached->object != b.attached->object
                     || !close(a.attached->offset, b.attached->offset))) {
    return false;
  }
  if ((a.robot_config - b.robot_config).norm() > kPoseTol) {
    return false;
  }
  for (std::size_t i = 0; i < a.object_poses.size(); ++i) {
    if (!close(a.object_poses[i], b.object_poses[i])) {
      return false;
    }
  }
  return true;
}

// Walks one step's polyline from its start state, checking validity at half
// the edge resolution, and returns the state at the final waypoint.
auto sweep_step(const Problem& problem, const PathStep& step, int index, ValidationReport& report)
    -> HybridState {
  HybridState s = step.start_state;
  const double spacing = 0.5 * edge_resolution(problem.scene);
  if (step.waypoints.empty()) {
    report.add("condition 2: step " + std::to_string(index) + " has no waypoints");
    return s;
  }
  if ((s.robot_config - step.waypoints.front()).norm() > kPoseTol) {
    report.add("condition 2: step " + std::to_string(index)
               + " start state disagrees with its first waypoint");
  }
  s.set_robot_config(step.waypoints.front());
  if (!is_valid(s, problem.scene)) {
    report.add("condition 2: step " + std::to_string(index) + " starts in an invalid state");
  }
  for (std::size_t leg = 0; leg + 1 < step.waypoints.size(); ++leg) {
    const Config& from = step.waypoints[leg];
    const Config& to = step.waypoints[leg + 1];
    const double len = (to - from).norm();
    const int pieces = std::max(1, static_cast<int>(std::ceil(len / spacing)));
    for (int k = 1; k <= pieces; ++k) {
      const double t = static_cast<double>(k) / pieces;
      s.set_robot_config(from + t * (to - from));
      if (!is_valid(s, problem.scene)) {
        report.add("condition 2: step " + std::to_string(index) + " leg " + std::to_string(leg)
                   + " passes through an invalid state");
        break;
      }
    }
  }
  s.set_robot_config(step.waypoints.back());
  return s;
}

}  // namespace

auto validate_solution(const Problem& problem, const SolutionPath& path) -> ValidationReport {
  ValidationReport report;
  if (path.steps.empty()) {
    report.add("condition 1: path has no steps");
    return report;
  }

  if (!states_match(path.steps.front().start_state, problem.initial_state())) {
    report.add("condition 1: path does not start at the initial state");
  }

  HybridState carried = path.steps.front().start_state;
  double length = 0.0;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const PathStep& step = path.steps[i];
    if (i > 0 && !states_match(step.start_state, carried)) {
      report.add("condition 4: step " + std::to_string(i)
                 + " does not start at the previous action's effect state");
    }
    for (std::size_t leg = 0; leg + 1 < step.waypoints.size(); ++leg) {
      length += (step.waypoints[leg + 1] - step.waypoints[leg]).norm();
    }

    HybridState end = sweep_step(problem, step, static_cast<int>(i), report);
    const bool last = i + 1 == path.steps.size();
    if (step.action == kNullStep) {
      if (!last) {
        report.add("condition 4: step " + std::to_string(i)
                   + " closes with no action before the final step");
      }
      carried = end;
      continue;
    }

    if (step.action < 0 || step.action >= static_cast<int>(problem.actions.size())) {
      report.add("condition 3: step " + std::to_string(i) + " names an unknown action");
      carried = end;
      continue;
    }

    const GroundAction& action = problem.actions[static_cast<std::size_t>(step.action)];
    if (!precondition_holds(problem, action, end, kSatisfactionTol)) {
      report.add("condition 3: step " + std::to_string(i) + " ends where action '" + action.name
                 + "' is not applicable");
      carried = end;
      continue;
    }
    carried = apply_effect(problem, action, end);
    if (!is_valid(carried, problem.scene)) {
      report.add("condition 2: step " + std::to_string(i) + " action '" + action.name
                 + "' produces an invalid state");
    }
  }

  if (!goal_holds(problem, carried, kSatisfactionTol)) {
    report.add("condition 5: the goal does not hold at the end of the path");
  }

  if (std::abs(length - path.cost) > 1e-6 * std::max(1.0, std::abs(path.cost))) {
    report.add("cost mismatch: declared " + std::to_string(path.cost) + ", measured "
               + std::to_string(length));
  }

  return report;
}

}  // namespace tmitstar
