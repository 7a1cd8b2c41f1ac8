#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/search.hpp"

#include <string>

namespace tmitstar {

// SVG 1.1 snapshot of the workspace: bounds, regions, obstacles, objects at
// their initial poses, and the robot start.
[[nodiscard]] auto render_scene_svg(const Problem& problem) -> std::string;

// Scene plus the solution trace: one polyline per step, one marker per
// action, and the final resting poses of the objects.
[[nodiscard]] auto render_plan_svg(const Problem& problem, const SolutionPath& path)
    -> std::string;

auto save_svg(const std::string& svg, const std::string& file) -> void;

}  // namespace tmitstar
