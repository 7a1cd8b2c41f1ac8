#include "tmitstar/scene.hpp"

#include <cmath>
#include <limits>

namespace tmitstar {

auto Scene::object_index(const std::string& id) const -> std::optional<int> {
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i].id == id) {
      return static_cast<int>(i);
    }
  }

  return std::nullopt;
}

auto Scene::region_index(const std::string& id) const -> std::optional<int> {
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].id == id) {
      return static_cast<int>(i);
    }
  }

  return std::nullopt;
}

auto Scene::min_object_radius() const -> double {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& o : objects) {
    r = std::min(r, o.radius);
  }

  return r;
}

namespace {

[[nodiscard]] auto disc_placement_ok(const Vec2& c, double r, const Scene& scene) -> bool {
  if (!disc_in_rect(c, r, scene.bounds)) {
    return false;
  }

  for (const auto& obs : scene.obstacles) {
    if (disc_rect_overlap(c, r, obs)) {
      return false;
    }
  }

  return true;
}

}  // namespace

auto is_valid(const HybridState& q, const Scene& scene) -> bool {
  const Vec2 robot = q.robot_pos();
  if (!disc_placement_ok(robot, scene.robot_radius, scene)) {
    return false;
  }

  const int held = q.attached ? q.attached->object : -1;
  if (held >= 0 && !disc_placement_ok(q.object_poses[static_cast<std::size_t>(held)],
                                      scene.objects[static_cast<std::size_t>(held)].radius, scene)) {
    return false;
  }

  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    if (static_cast<int>(i) == held) {
      continue;
    }

    const Vec2& pose = q.object_poses[i];
    const double radius = scene.objects[i].radius;
    if (discs_overlap(robot, scene.robot_radius, pose, radius)) {
      return false;
    }

    if (held >= 0
        && discs_overlap(q.object_poses[static_cast<std::size_t>(held)],
                         scene.objects[static_cast<std::size_t>(held)].radius, pose, radius)) {
      return false;
    }
  }

  return true;
}

auto edge_resolution(const Scene& scene) -> double {
  double res = 0.25 * scene.robot_radius;
  if (!scene.objects.empty()) {
    res = std::min(res, 0.5 * scene.min_object_radius());
  }

  return res;
}

auto motion_valid(const HybridState& q, const Config& to, const Scene& scene, double resolution,
                  long* checks) -> bool {
  const double len = (to - q.robot_config).norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(len / resolution)));
  HybridState probe = q;
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(steps);
    probe.set_robot_config(q.robot_config + t * (to - q.robot_config));
    if (checks != nullptr) {
      ++*checks;
    }

    if (!is_valid(probe, scene)) {
      return false;
    }
  }

  return true;
}

auto world_diagonal(const Scene& scene) -> double {
  return (scene.bounds.hi - scene.bounds.lo).norm();
}

}  // namespace tmitstar
