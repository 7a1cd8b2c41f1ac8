#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/modes.hpp"

#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tmitstar {

struct Vertex {
  int id = -1;
  HybridState state;
  int mode = -1;
  bool goal = false;
};

// Discovered crossing between modes: applying `action` at vertex `from`
// yields vertex `to`. Traversal costs nothing; the motion happens inside
// modes.
struct Transition {
  int id = -1;
  int from = -1;
  int to = -1;
  int action = -1;
};

// Vertices grouped by mode, an implicit intramode edge set frozen per vertex
// at insertion time, and the explicit transition set. Adjacency only ever
// grows as samples arrive, so incremental cost-to-go repair stays exact.
class SearchGraph {
public:
  explicit SearchGraph(double world_diagonal) : diagonal_(world_diagonal) {}

  // Adds a sample and connects it (both ways) to every same-mode vertex
  // within the mode's current connection radius.
  auto add_vertex(const HybridState& state, int mode, bool goal) -> int;
  auto add_transition(int from, int action, int to) -> int;

  [[nodiscard]] auto vertex(int id) const -> const Vertex& {
    return vertices_[static_cast<std::size_t>(id)];
  }

  [[nodiscard]] auto transition(int id) const -> const Transition& {
    return transitions_[static_cast<std::size_t>(id)];
  }

  [[nodiscard]] auto vertex_count() const -> int { return static_cast<int>(vertices_.size()); }
  [[nodiscard]] auto transition_count() const -> int {
    return static_cast<int>(transitions_.size());
  }

  [[nodiscard]] auto mode_vertices(int mode) const -> const std::vector<int>&;
  [[nodiscard]] auto transitions_from_mode(int mode) const -> const std::vector<int>&;
  [[nodiscard]] auto transitions_at_vertex(int vid) const -> const std::vector<int>&;
  [[nodiscard]] auto transitions_into_vertex(int vid) const -> const std::vector<int>&;
  [[nodiscard]] auto has_transition(int from, int action) const -> bool;
  [[nodiscard]] auto goal_vertices() const -> const std::vector<int>& { return goals_; }

  // Shrinking connection radius for the mode's current sample count (capped
  // at the world diagonal).
  [[nodiscard]] auto radius(int mode) const -> double;

  // Same-mode vertices connected to `vid`, sorted by id: everything within
  // `vid`'s insertion-time radius plus every later vertex that connected back.
  [[nodiscard]] auto neighbors(int vid) const -> const std::vector<int>& {
    return adjacency_[static_cast<std::size_t>(vid)];
  }

  [[nodiscard]] static auto rgg_radius(int samples, double area, int dimension) -> double;

private:
  struct ModeBucket {
    std::vector<int> vertices;
    std::vector<int> out_transitions;
    std::unordered_map<std::uint64_t, std::vector<int>> grid;
    double cell = -1.0;  // grid cell size; rebuilt when the radius halves
  };

  auto bucket(int mode) -> ModeBucket&;
  [[nodiscard]] auto collect_in_radius(const ModeBucket& b, const Config& q, double r,
                                       int skip) const -> std::vector<int>;

  double diagonal_;
  std::vector<Vertex> vertices_;
  std::vector<Transition> transitions_;
  std::vector<ModeBucket> buckets_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<std::vector<int>> vertex_transitions_;
  std::vector<std::vector<int>> vertex_in_transitions_;
  std::unordered_set<std::uint64_t> transition_keys_;
  std::vector<int> goals_;
  std::vector<int> empty_;
};

// Euclidean distance between two states of the same mode; throws
// std::invalid_argument when the states do not share a mode.
[[nodiscard]] auto intramode_distance(const HybridState& a, const HybridState& b) -> double;

// Graph-aware distance: Euclidean within a mode, otherwise the cheapest chain
// of straight legs through discovered transitions (which cost nothing).
// Infinite when no transition chain connects the modes.
[[nodiscard]] auto hybrid_distance(const HybridState& a, const HybridState& b,
                                   const SearchGraph& graph, const ModeSet& modes) -> double;

// Applies `action` at an existing vertex whose state satisfies the full
// precondition, records the resulting state as a vertex of the (possibly
// new) successor mode, and links the transition. Returns the successor
// vertex id. Throws std::logic_error when the precondition does not hold or
// the effect state is invalid.
auto mark_reachable(const Problem& problem, ModeSet& modes, SearchGraph& graph, int from_vid,
                    int action_id) -> int;

}  // namespace tmitstar
