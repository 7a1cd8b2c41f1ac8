#pragma once

#include "tmitstar/geometry.hpp"
#include "tmitstar/hybrid_state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tmitstar {

struct SceneObject {
  std::string id;
  double radius = 0.0;
  Vec2 start_pose = Vec2::Zero();
  std::string color;
};

struct SceneRegion {
  std::string id;
  Rect rect;
};

// Static workspace description: a disc robot among disc objects, axis-aligned
// rectangular obstacles, and named rectangular regions.
struct Scene {
  Rect bounds;
  double robot_radius = 0.3;
  double grasp_reach = 0.5;
  Config robot_start;
  std::vector<SceneObject> objects;
  std::vector<SceneRegion> regions;
  std::vector<Rect> obstacles;

  [[nodiscard]] auto object_index(const std::string& id) const -> std::optional<int>;
  [[nodiscard]] auto region_index(const std::string& id) const -> std::optional<int>;
  [[nodiscard]] auto min_object_radius() const -> double;
};

// A state is valid when the robot disc and every object disc lie inside the
// workspace bounds, no disc strictly overlaps a static obstacle, and neither
// the robot nor a carried object strictly overlaps an unheld object. Unheld
// objects rest where they were placed and are never checked against each
// other. Tangency does not count as overlap.
[[nodiscard]] auto is_valid(const HybridState& q, const Scene& scene) -> bool;

// Collision-check spacing along interpolated motions.
[[nodiscard]] auto edge_resolution(const Scene& scene) -> double;

// Straight-line robot motion from `q` (carried object riding along) to robot
// configuration `to`, checked every `resolution` world units, endpoints
// included. Increments `*checks` by the number of state validations performed.
[[nodiscard]] auto motion_valid(const HybridState& q, const Config& to, const Scene& scene,
                                double resolution, long* checks = nullptr) -> bool;

[[nodiscard]] auto world_diagonal(const Scene& scene) -> double;

}  // namespace tmitstar
