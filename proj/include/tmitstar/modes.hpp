#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/hybrid_state.hpp"

#include <string>
#include <unordered_map>
#include <vector>

namespace tmitstar {

// A mode family fixes the discrete assignment; a mode additionally fixes the
// poses of every unheld object and the grasp offset of a held one. All states
// in a mode differ only in robot configuration.
struct ModeFamily {
  DiscreteState assignment;
};

struct Mode {
  int id = -1;
  int family = -1;
  DiscreteState assignment;
  std::vector<Vec2> object_poses;  // poses of unheld objects; held slot is a placeholder
  std::optional<Attachment> attachment;
  int reached_at = -1;  // global reach stamp; orders queue seeding

  // Projection attempts spent per action id (goal projection uses kGoalAction).
  std::unordered_map<int, int> attempts_used;

  // Instantiates a member state of this mode at the given robot configuration.
  [[nodiscard]] auto instantiate(const Config& robot_config) const -> HybridState;
};

constexpr int kGoalAction = -1;

// Deduplicating store of discovered modes and families. Two states share a
// mode exactly when their discrete assignments, unheld object poses, and
// attachment (object and bitwise offset) all coincide.
class ModeSet {
public:
  // Returns the mode containing `q`, creating and stamping it when new.
  auto ensure_mode(const HybridState& q) -> int;

  // Returns the existing mode containing `q`, or -1.
  [[nodiscard]] auto find(const HybridState& q) const -> int;

  [[nodiscard]] auto mode(int id) const -> const Mode& { return modes_[static_cast<std::size_t>(id)]; }
  [[nodiscard]] auto mode(int id) -> Mode& { return modes_[static_cast<std::size_t>(id)]; }
  [[nodiscard]] auto size() const -> int { return static_cast<int>(modes_.size()); }
  [[nodiscard]] auto family(int id) const -> const ModeFamily& {
    return families_[static_cast<std::size_t>(id)];
  }

  [[nodiscard]] auto family_count() const -> int { return static_cast<int>(families_.size()); }

  // Family id carrying this discrete assignment, or -1 when no reached mode
  // has it yet.
  [[nodiscard]] auto find_family(const DiscreteState& assignment) const -> int;

private:
  [[nodiscard]] static auto mode_key(const HybridState& q) -> std::string;

  std::vector<Mode> modes_;
  std::vector<ModeFamily> families_;
  std::unordered_map<std::string, int> by_key_;
  std::unordered_map<DiscreteState, int, DiscreteStateHash> family_by_assignment_;
  int next_stamp_ = 0;
};

}  // namespace tmitstar
