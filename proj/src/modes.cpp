#include "tmitstar/modes.hpp"

#include <cstring>

namespace tmitstar {

auto Mode::instantiate(const Config& robot_config) const -> HybridState {
  HybridState q;
  q.object_poses = object_poses;
  q.discrete = assignment;
  q.attached = attachment;
  q.set_robot_config(robot_config);
  return q;
}

auto ModeSet::mode_key(const HybridState& q) -> std::string {
  std::string key;
  key.reserve(q.discrete.size() + 16 * q.object_poses.size() + 24);
  key.append(reinterpret_cast<const char*>(q.discrete.bits.data()), q.discrete.bits.size());

  const int held = q.attached ? q.attached->object : -1;
  for (std::size_t i = 0; i < q.object_poses.size(); ++i) {
    if (static_cast<int>(i) == held) {
      key.push_back('\xff');
      continue;
    }

    char buf[16];
    const double x = q.object_poses[i].x();
    const double y = q.object_poses[i].y();
    std::memcpy(buf, &x, 8);
    std::memcpy(buf + 8, &y, 8);
    key.append(buf, 16);
  }

  if (q.attached) {
    char buf[20];
    const double x = q.attached->offset.x();
    const double y = q.attached->offset.y();
    std::memcpy(buf, &q.attached->object, 4);
    std::memcpy(buf + 4, &x, 8);
    std::memcpy(buf + 12, &y, 8);
    key.append(buf, 20);
  }

  return key;
}

auto ModeSet::ensure_mode(const HybridState& q) -> int {
  const std::string key = mode_key(q);
  if (const auto it = by_key_.find(key); it != by_key_.end()) {
    return it->second;
  }

  int family = -1;
  if (const auto it = family_by_assignment_.find(q.discrete); it != family_by_assignment_.end()) {
    family = it->second;
  } else {
    family = static_cast<int>(families_.size());
    families_.push_back(ModeFamily{q.discrete});
    family_by_assignment_.emplace(q.discrete, family);
  }

  Mode m;
  m.id = static_cast<int>(modes_.size());
  m.family = family;
  m.assignment = q.discrete;
  m.object_poses = q.object_poses;
  m.attachment = q.attached;
  m.reached_at = next_stamp_++;
  modes_.push_back(std::move(m));
  by_key_.emplace(key, static_cast<int>(modes_.size()) - 1);
  return static_cast<int>(modes_.size()) - 1;
}

auto ModeSet::find(const HybridState& q) const -> int {
  const auto it = by_key_.find(mode_key(q));
  return it == by_key_.end() ? -1 : it->second;
}

auto ModeSet::find_family(const DiscreteState& assignment) const -> int {
  const auto it = family_by_assignment_.find(assignment);
  return it == family_by_assignment_.end() ? -1 : it->second;
}

}  // namespace tmitstar
