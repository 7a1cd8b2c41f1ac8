#include "tmitstar/search_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace tmitstar {

namespace {

[[nodiscard]] auto same_mode(const HybridState& a, const HybridState& b) -> bool {
  if (a.discrete != b.discrete || a.attached != b.attached) {
    return false;
  }

  const int held = a.attached ? a.attached->object : -1;
  for (std::size_t i = 0; i < a.object_poses.size(); ++i) {
    if (static_cast<int>(i) != held && a.object_poses[i] != b.object_poses[i]) {
      return false;
    }
  }

  return true;
}

[[nodiscard]] auto cell_key(const Config& c, double cell) -> std::uint64_t {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    const auto v = static_cast<std::int64_t>(std::floor(c[k] / cell));
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U);
  }

  return h;
}

}  // namespace

auto SearchGraph::add_vertex(const HybridState& state, int mode, bool goal) -> int {
  const int id = static_cast<int>(vertices_.size());
  vertices_.push_back(Vertex{id, state, mode, goal});
  vertex_transitions_.emplace_back();
  vertex_in_transitions_.emplace_back();
  ModeBucket& b = bucket(mode);
  b.vertices.push_back(id);
  if (goal) {
    goals_.push_back(id);
  }

  // Freeze the adjacency now, at the current radius, and mirror it on the
  // neighbors. Later samples shrink the radius without dropping these edges.
  const double r = radius(mode);
  if (b.cell < 0.0 || r < 0.5 * b.cell) {
    b.cell = r;
    b.grid.clear();
    for (const int vid : b.vertices) {
      b.grid[cell_key(vertices_[static_cast<std::size_t>(vid)].state.robot_config, b.cell)]
          .push_back(vid);
    }
  } else {
    b.grid[cell_key(state.robot_config, b.cell)].push_back(id);
  }

  auto nbrs = collect_in_radius(b, state.robot_config, r, id);
  std::sort(nbrs.begin(), nbrs.end());
  adjacency_.push_back(std::move(nbrs));
  for (const int nb : adjacency_.back()) {
    adjacency_[static_cast<std::size_t>(nb)].push_back(id);  // id is the largest: stays sorted
  }

  return id;
}

auto SearchGraph::add_transition(int from, int action, int to) -> int {
  const int id = static_cast<int>(transitions_.size());
  transitions_.push_back(Transition{id, from, to, action});
  transition_keys_.insert((static_cast<std::uint64_t>(from) << 24U)
                          ^ static_cast<std::uint64_t>(action + 1));
  vertex_transitions_[static_cast<std::size_t>(from)].push_back(id);
  vertex_in_transitions_[static_cast<std::size_t>(to)].push_back(id);
  bucket(vertices_[static_cast<std::size_t>(from)].mode).out_transitions.push_back(id);
  return id;
}

auto SearchGraph::transitions_into_vertex(int vid) const -> const std::vector<int>& {
  return vertex_in_transitions_[static_cast<std::size_t>(vid)];
}

auto SearchGraph::has_transition(int from, int action) const -> bool {
  return transition_keys_.contains((static_cast<std::uint64_t>(from) << 24U)
                                   ^ static_cast<std::uint64_t>(action + 1));
}

auto SearchGraph::mode_vertices(int mode) const -> const std::vector<int>& {
  if (mode < 0 || mode >= static_cast<int>(buckets_.size())) {
    return empty_;
  }

  return buckets_[static_cast<std::size_t>(mode)].vertices;
}

auto SearchGraph::transitions_from_mode(int mode) const -> const std::vector<int>& {
  if (mode < 0 || mode >= static_cast<int>(buckets_.size())) {
    return empty_;
  }

  return buckets_[static_cast<std::size_t>(mode)].out_transitions;
}

auto SearchGraph::transitions_at_vertex(int vid) const -> const std::vector<int>& {
  return vertex_transitions_[static_cast<std::size_t>(vid)];
}

auto SearchGraph::rgg_radius(int samples, double area, int dimension) -> double {
  const double n = static_cast<double>(std::max(samples, 2));
  const double d = static_cast<double>(dimension);
  const double unit_ball = dimension == 2 ? std::numbers::pi : 1.0;
  const double gamma =
      2.0 * std::pow(1.0 + 1.0 / d, 1.0 / d) * std::pow(area / unit_ball, 1.0 / d);
  constexpr double eta = 1.1;
  return eta * gamma * std::pow(std::log(n) / n, 1.0 / d);
}

auto SearchGraph::radius(int mode) const -> double {
  const auto& verts = mode_vertices(mode);
  const int n = static_cast<int>(verts.size());
  if (n == 0) {
    return diagonal_;
  }

  const double area = diagonal_ * diagonal_ / 2.0;
  const int dim = static_cast<int>(vertices_[static_cast<std::size_t>(verts.front())]
                                       .state.robot_config.size());
  return std::min(rgg_radius(n, area, dim), diagonal_);
}

auto SearchGraph::bucket(int mode) -> ModeBucket& {
  while (static_cast<int>(buckets_.size()) <= mode) {
    buckets_.emplace_back();
  }

  return buckets_[static_cast<std::size_t>(mode)];
}

auto SearchGraph::collect_in_radius(const ModeBucket& b, const Config& q, double r,
                                    int skip) const -> std::vector<int> {
  std::vector<int> out;
  const double r2 = r * r;
  const int reach = static_cast<int>(std::ceil(r / b.cell));
  const Eigen::Index dim = q.size();
  std::vector<int> offsets(static_cast<std::size_t>(dim), -reach);
  Config probe = q;

  // Walk the (2 reach + 1)^d block of grid cells covering the query disc.
  while (true) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      probe[k] = q[k] + static_cast<double>(offsets[static_cast<std::size_t>(k)]) * b.cell;
    }

    if (const auto it = b.grid.find(cell_key(probe, b.cell)); it != b.grid.end()) {
      for (const int other : it->second) {
        if (other != skip
            && (vertices_[static_cast<std::size_t>(other)].state.robot_config - q).squaredNorm()
                   <= r2) {
          out.push_back(other);
        }
      }
    }

    Eigen::Index k = 0;
    while (k < dim && offsets[static_cast<std::size_t>(k)] == reach) {
      offsets[static_cast<std::size_t>(k)] = -reach;
      ++k;
    }

    if (k == dim) {
      break;
    }

    ++offsets[static_cast<std::size_t>(k)];
  }

  return out;
}

auto intramode_distance(const HybridState& a, const HybridState& b) -> double {
  if (!same_mode(a, b)) {
    throw std::invalid_argument("intramode_distance requires states of the same mode");
  }

  return (a.robot_config - b.robot_config).norm();
}

auto hybrid_distance(const HybridState& a, const HybridState& b, const SearchGraph& graph,
                     const ModeSet& modes) -> double {
  const int mode_a = modes.find(a);
  const int mode_b = modes.find(b);
  if (mode_a >= 0 && mode_a == mode_b) {
    return (a.robot_config - b.robot_config).norm();
  }

  if (mode_a < 0 || mode_b < 0) {
    return std::numeric_limits<double>::infinity();
  }

  // Dijkstra over transition endpoints; entering a transition costs the
  // straight-line leg to its source state, traversing it costs nothing.
  const int nt = graph.transition_count();
  std::vector<double> dist(static_cast<std::size_t>(nt),
                           std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;  // (cost, transition id), -1 = origin
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  open.emplace(0.0, -1);

  double best = std::numeric_limits<double>::infinity();
  while (!open.empty()) {
    const auto [cost, t] = open.top();
    open.pop();
    if (cost >= best) {
      break;
    }

    int mode = mode_a;
    const HybridState* at = &a;
    if (t >= 0) {
      if (cost > dist[static_cast<std::size_t>(t)]) {
        continue;
      }

      const Vertex& landing = graph.vertex(graph.transition(t).to);
      mode = landing.mode;
      at = &landing.state;
    }

    if (mode == mode_b) {
      best = std::min(best, cost + (at->robot_config - b.robot_config).norm());
      continue;
    }

    for (const int tid : graph.transitions_from_mode(mode)) {
      const Vertex& source = graph.vertex(graph.transition(tid).from);
      const double next = cost + (at->robot_config - source.state.robot_config).norm();
      if (next < dist[static_cast<std::size_t>(tid)]) {
        dist[static_cast<std::size_t>(tid)] = next;
        open.emplace(next, tid);
      }
    }
  }

  return best;
}

auto mark_reachable(const Problem& problem, ModeSet& modes, SearchGraph& graph, int from_vid,
                    int action_id) -> int {
  const Vertex& from = graph.vertex(from_vid);
  const auto& action = problem.actions[static_cast<std::size_t>(action_id)];
  if (!precondition_holds(problem, action, from.state, kSatisfactionTol)) {
    throw std::logic_error("mark_reachable called with unsatisfied precondition: " + action.name);
  }

  const HybridState to_state = apply_effect(problem, action, from.state);
  if (!is_valid(to_state, problem.scene)) {
    throw std::logic_error("mark_reachable produced an invalid effect state: " + action.name);
  }

  const int mode = modes.ensure_mode(to_state);
  const int to_vid = graph.add_vertex(to_state, mode, goal_holds(problem, to_state, kSatisfactionTol));
  graph.add_transition(from_vid, action_id, to_vid);
  return to_vid;
}

}  // namespace tmitstar
