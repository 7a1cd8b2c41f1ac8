#pragma once

#include "tmitstar/discrete_state.hpp"
#include "tmitstar/geometry.hpp"

#include <optional>
#include <vector>

namespace tmitstar {

// Rigid grasp: while held, the object's pose is the robot position plus a
// fixed offset captured at pick time.
struct Attachment {
  int object = -1;
  Vec2 offset = Vec2::Zero();

  [[nodiscard]] auto operator==(const Attachment& o) const -> bool {
    return object == o.object && offset == o.offset;
  }
};

// Full planning state: robot configuration, one planar pose per object, a
// truth assignment over the ground symbols, and the current attachment.
struct HybridState {
  Config robot_config;
  std::vector<Vec2> object_poses;
  DiscreteState discrete;
  std::optional<Attachment> attached;

  [[nodiscard]] auto robot_pos() const -> Vec2 { return robot_config.head<2>(); }

  // The attached object (if any) rides along with the robot; this is the only
  // sanctioned way to move the robot inside a state.
  void set_robot_config(const Config& c) {
    robot_config = c;
    if (attached) {
      object_poses[static_cast<std::size_t>(attached->object)] = robot_pos() + attached->offset;
    }
  }

  [[nodiscard]] auto operator==(const HybridState& o) const -> bool {
    return robot_config == o.robot_config && object_poses == o.object_poses
           && discrete == o.discrete && attached == o.attached;
  }
};

}  // namespace tmitstar
