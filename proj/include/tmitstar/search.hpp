#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/search_graph.hpp"
#include "tmitstar/task_plan.hpp"

#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

namespace tmitstar {

// Collision-checks the straight robot motion between two same-mode vertices
// at the scene's edge resolution. A vertex is trivially connected to itself.
[[nodiscard]] auto validate_edge(const Problem& problem, const SearchGraph& graph, int u, int v,
                                 long* checks = nullptr) -> bool;

// Remembered validation results; an edge found invalid is never re-checked.
class EdgeCache {
public:
  enum class Status { Unknown, Valid, Invalid };

  [[nodiscard]] auto status(int u, int v) const -> Status;
  auto record(int u, int v, bool valid) -> void;
  [[nodiscard]] auto invalid_count() const -> std::size_t { return invalid_.size(); }
  [[nodiscard]] auto valid_count() const -> std::size_t { return valid_.size(); }

private:
  [[nodiscard]] static auto key(int u, int v) -> std::uint64_t;

  std::unordered_set<std::uint64_t> valid_;
  std::unordered_set<std::uint64_t> invalid_;
};

// Cost-to-go estimate over the implicit graph, computed against the goal
// vertex set by a label-correcting search that treats motion edges as their
// Euclidean length without validating them and transitions as free. Supports
// incremental vertex insertion and edge invalidation with local repair.
class ReverseSearch {
public:
  auto rebuild(const SearchGraph& graph, const EdgeCache& cache) -> void;

  // Local repair after appending vertices to the graph. Sound because vertex
  // adjacency is frozen at insertion: the implicit edge set only grows.
  auto insert_new_vertices(const SearchGraph& graph, const EdgeCache& cache) -> void;

  // Local repair after (u, v) was found invalid.
  auto edge_invalidated(const SearchGraph& graph, const EdgeCache& cache, int u, int v) -> void;

  [[nodiscard]] auto cost_to_go(int vid) const -> double;

  // Debug audit: (vertices with g != rhs, vertices whose rhs disagrees with a
  // from-scratch recomputation). Both zero after a correct full drain.
  [[nodiscard]] auto debug_inconsistencies(const SearchGraph& graph, const EdgeCache& cache) const
      -> std::pair<int, int>;

private:
  auto update_vertex(const SearchGraph& graph, const EdgeCache& cache, int vid) -> void;
  auto drain(const SearchGraph& graph, const EdgeCache& cache) -> void;
  [[nodiscard]] auto recompute_rhs(const SearchGraph& graph, const EdgeCache& cache, int vid) const
      -> double;

  std::vector<double> g_;
  std::vector<double> rhs_;
  std::vector<std::pair<double, int>> heap_;
  int known_vertices_ = 0;
  int known_transitions_ = 0;
};

struct PathStep {
  HybridState start_state;        // full state at the first waypoint
  std::vector<Config> waypoints;  // robot configurations, straight legs between
  int action = kNullStep;         // ground action closing this step
};

struct SolutionPath {
  std::vector<PathStep> steps;
  double cost = 0.0;
};

struct ForwardResult {
  std::optional<SolutionPath> path;  // engaged iff a path beat the incumbent
  double cost = 0.0;
  long edges_validated = 0;  // counted even when no path is returned
};

// Lazy forward search over the current graph: edges are ordered by
// g(u) + cost(u, v) + cost_to_go(v), validated only when popped, and reported
// back for cost-to-go repair when invalid. Ties break on lower g, then lower
// vertex ids. Engages `path` only when one strictly cheaper than
// `incumbent_cost` exists in the current graph. A `should_stop` callback is
// polled every few hundred pops; aborting returns whatever was found so far.
[[nodiscard]] auto forward_search(const Problem& problem, const SearchGraph& graph,
                                  ReverseSearch& reverse, EdgeCache& cache, int start,
                                  double incumbent_cost,
                                  const std::function<bool()>& should_stop = {}) -> ForwardResult;

}  // namespace tmitstar
