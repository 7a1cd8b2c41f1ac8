#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/search.hpp"

#include <string>
#include <vector>

namespace tmitstar {

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;

  auto add(std::string msg) -> void {
    ok = false;
    violations.push_back(std::move(msg));
  }
};

// First-principles check of a solution path, independent of how it was
// produced. Verifies, in order:
//   1. the path starts at the problem's initial state;
//   2. every interpolated state along every leg is valid, sampled at half the
//      planner's edge resolution;
//   3. each step's action precondition holds (discrete exactly, geometric
//      within tolerance) at the step's final waypoint;
//   4. each step's successor starts exactly at the action's effect state;
//   5. the goal holds at the end of the path.
// All violations found are reported, each naming its condition and step.
[[nodiscard]] auto validate_solution(const Problem& problem, const SolutionPath& path)
    -> ValidationReport;

}  // namespace tmitstar
