#include "tmitstar/search.hpp"

#include "tmitstar/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace tmitstar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

auto motion_cost(const SearchGraph& graph, int u, int v) -> double {
  return (graph.vertex(u).state.robot_config - graph.vertex(v).state.robot_config).norm();
}

}  // namespace

auto validate_edge(const Problem& problem, const SearchGraph& graph, int u, int v, long* checks)
    -> bool {
  if (u == v) {
    return true;
  }
  const Vertex& a = graph.vertex(u);
  const Vertex& b = graph.vertex(v);
  if (a.mode != b.mode) {
    throw std::invalid_argument("validate_edge: endpoints lie in different modes");
  }
  return motion_valid(a.state, b.state.robot_config, problem.scene, edge_resolution(problem.scene),
                      checks);
}

auto EdgeCache::key(int u, int v) -> std::uint64_t {
  const auto lo = static_cast<std::uint64_t>(std::min(u, v));
  const auto hi = static_cast<std::uint64_t>(std::max(u, v));
  return (lo << 32) | hi;
}

auto EdgeCache::status(int u, int v) const -> Status {
  const auto k = key(u, v);
  if (invalid_.count(k) != 0) {
    return Status::Invalid;
  }
  if (valid_.count(k) != 0) {
    return Status::Valid;
  }
  return Status::Unknown;
}

auto EdgeCache::record(int u, int v, bool valid) -> void {
  (valid ? valid_ : invalid_).insert(key(u, v));
}

auto ReverseSearch::rebuild(const SearchGraph& graph, const EdgeCache& cache) -> void {
  const int n = graph.vertex_count();
  g_.assign(static_cast<std::size_t>(n), kInf);
  rhs_.assign(static_cast<std::size_t>(n), kInf);
  heap_.clear();
  known_vertices_ = n;
  known_transitions_ = graph.transition_count();
  for (int vid : graph.goal_vertices()) {
    rhs_[static_cast<std::size_t>(vid)] = 0.0;
    heap_.emplace_back(0.0, vid);
  }
  std::make_heap(heap_.begin(), heap_.end(), std::greater<>{});
  drain(graph, cache);
}

auto ReverseSearch::insert_new_vertices(const SearchGraph& graph, const EdgeCache& cache) -> void {
  const int n = graph.vertex_count();
  g_.resize(static_cast<std::size_t>(n), kInf);
  rhs_.resize(static_cast<std::size_t>(n), kInf);
  for (int vid = known_vertices_; vid < n; ++vid) {
    update_vertex(graph, cache, vid);
  }
  // A transition appended between pre-existing vertices changes the source's
  // successor set directly.
  for (int tid = known_transitions_; tid < graph.transition_count(); ++tid) {
    const Transition& t = graph.transition(tid);
    if (t.from < known_vertices_) {
      update_vertex(graph, cache, t.from);
    }
  }
  known_vertices_ = n;
  known_transitions_ = graph.transition_count();
  drain(graph, cache);
}

auto ReverseSearch::edge_invalidated(const SearchGraph& graph, const EdgeCache& cache, int u, int v)
    -> void {
  if (u >= known_vertices_ || v >= known_vertices_) {
    return;
  }
  update_vertex(graph, cache, u);
  update_vertex(graph, cache, v);
  drain(graph, cache);
}

auto ReverseSearch::cost_to_go(int vid) const -> double {
  if (vid < 0 || vid >= known_vertices_) {
    return kInf;
  }
  return g_[static_cast<std::size_t>(vid)];
}

auto ReverseSearch::debug_inconsistencies(const SearchGraph& graph, const EdgeCache& cache) const
    -> std::pair<int, int> {
  int unsettled = 0;
  int stale = 0;
  for (int vid = 0; vid < known_vertices_; ++vid) {
    const auto i = static_cast<std::size_t>(vid);
    if (g_[i] != rhs_[i]) {
      ++unsettled;
    }
    const double fresh = graph.vertex(vid).goal ? 0.0 : recompute_rhs(graph, cache, vid);
    if (fresh != rhs_[i]) {
      ++stale;
    }
  }
  return {unsettled, stale};
}

auto ReverseSearch::recompute_rhs(const SearchGraph& graph, const EdgeCache& cache, int vid) const
    -> double {
  double best = kInf;
  for (int nb : graph.neighbors(vid)) {
    if (nb >= static_cast<int>(g_.size())) {
      continue;
    }
    if (cache.status(vid, nb) == EdgeCache::Status::Invalid) {
      continue;
    }
    const double via = motion_cost(graph, vid, nb) + g_[static_cast<std::size_t>(nb)];
    best = std::min(best, via);
  }
  for (int tid : graph.transitions_at_vertex(vid)) {
    const Transition& t = graph.transition(tid);
    if (t.to < static_cast<int>(g_.size())) {
      best = std::min(best, g_[static_cast<std::size_t>(t.to)]);
    }
  }
  return best;
}

auto ReverseSearch::update_vertex(const SearchGraph& graph, const EdgeCache& cache, int vid)
    -> void {
  const auto i = static_cast<std::size_t>(vid);
  rhs_[i] = graph.vertex(vid).goal ? 0.0 : recompute_rhs(graph, cache, vid);
  if (g_[i] != rhs_[i]) {
    heap_.emplace_back(std::min(g_[i], rhs_[i]), vid);
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
  }
}

auto ReverseSearch::drain(const SearchGraph& graph, const EdgeCache& cache) -> void {
  const auto preds_of = [&](int vid, auto&& visit) {
    for (int nb : graph.neighbors(vid)) {
      visit(nb);
    }
    for (int tid : graph.transitions_into_vertex(vid)) {
      visit(graph.transition(tid).from);
    }
  };
  // On a decrease only the changed successor matters, so predecessors are
  // relaxed directly instead of rescanning their whole neighborhoods.
  const auto relax_to = [&](int p, double candidate) {
    const auto j = static_cast<std::size_t>(p);
    if (graph.vertex(p).goal || candidate >= rhs_[j]) {
      return;
    }
    rhs_[j] = candidate;
    if (g_[j] != rhs_[j]) {
      heap_.emplace_back(std::min(g_[j], rhs_[j]), p);
      std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
    }
  };
  while (!heap_.empty()) {
    const auto [key, vid] = heap_.front();
    std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
    heap_.pop_back();
    const auto i = static_cast<std::size_t>(vid);
    if (g_[i] == rhs_[i] || key != std::min(g_[i], rhs_[i])) {
      continue;  // consistent already, or a superseded heap entry
    }
    if (g_[i] > rhs_[i]) {
      g_[i] = rhs_[i];
      for (int nb : graph.neighbors(vid)) {
        if (nb < static_cast<int>(g_.size())
            && cache.status(vid, nb) != EdgeCache::Status::Invalid) {
          relax_to(nb, motion_cost(graph, vid, nb) + g_[i]);
        }
      }
      for (int tid : graph.transitions_into_vertex(vid)) {
        relax_to(graph.transition(tid).from, g_[i]);
      }
    } else {
      g_[i] = kInf;
      update_vertex(graph, cache, vid);
      preds_of(vid, [&](int p) { update_vertex(graph, cache, p); });
    }
  }
}

namespace {

// Edge queue entry: (g(u) + cost + cost_to_go(v), g(u) + cost, u, v, action).
// Lexicographic order keeps pops deterministic under ties.
struct EdgeEntry {
  double f = 0.0;
  double g_through = 0.0;
  int from = -1;
  int to = -1;
  int action = kNullStep;

  [[nodiscard]] auto operator>(const EdgeEntry& o) const -> bool {
    return std::tie(f, g_through, from, to, action) > std::tie(o.f, o.g_through, o.from, o.to,
                                                               o.action);
  }
};

}  // namespace

auto forward_search(const Problem& problem, const SearchGraph& graph, ReverseSearch& reverse,
                    EdgeCache& cache, int start, double incumbent_cost,
                    const std::function<bool()>& should_stop) -> ForwardResult {
  const int n = graph.vertex_count();
  std::vector<double> g(static_cast<std::size_t>(n), kInf);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::vector<int> parent_action(static_cast<std::size_t>(n), kNullStep);
  std::priority_queue<EdgeEntry, std::vector<EdgeEntry>, std::greater<EdgeEntry>> queue;

  double bound = incumbent_cost;
  int best_goal = -1;
  long validations = 0;

  const auto push_out_edges = [&](int u) {
    const double gu = g[static_cast<std::size_t>(u)];
    for (int nb : graph.neighbors(u)) {
      if (cache.status(u, nb) == EdgeCache::Status::Invalid) {
        continue;
      }
      const double gv = gu + motion_cost(graph, u, nb);
      const double f = gv + reverse.cost_to_go(nb);
      if (f < bound) {
        queue.push(EdgeEntry{f, gv, u, nb, kNullStep});
      }
    }
    for (int tid : graph.transitions_at_vertex(u)) {
      const Transition& t = graph.transition(tid);
      const double f = gu + reverse.cost_to_go(t.to);
      if (f < bound) {
        queue.push(EdgeEntry{f, gu, u, t.to, t.action});
      }
    }
  };

  g[static_cast<std::size_t>(start)] = 0.0;
  if (graph.vertex(start).goal) {
    best_goal = start;
    bound = std::min(bound, 0.0);
  }
  push_out_edges(start);

  long pops = 0;
  while (!queue.empty()) {
    const EdgeEntry e = queue.top();
    if (e.f >= bound) {
      break;  // every remaining edge is keyed at least this high
    }
    if (should_stop && (++pops & 0xFFL) == 0 && should_stop()) {
      break;
    }
    queue.pop();
    const double gu = g[static_cast<std::size_t>(e.from)];
    const double cost = e.action == kNullStep ? motion_cost(graph, e.from, e.to) : 0.0;
    const double gv = gu + cost;
    const double f = gv + reverse.cost_to_go(e.to);
    if (f > e.f) {
      if (f < bound) {
        queue.push(EdgeEntry{f, gv, e.from, e.to, e.action});
      }
      continue;  // the cost-to-go of the target rose since this entry was queued
    }
    if (gv >= g[static_cast<std::size_t>(e.to)] || f >= bound) {
      continue;
    }
    if (e.action == kNullStep) {
      const auto status = cache.status(e.from, e.to);
      if (status == EdgeCache::Status::Invalid) {
        continue;
      }
      if (status == EdgeCache::Status::Unknown) {
        ++validations;
        const bool ok = validate_edge(problem, graph, e.from, e.to);
        cache.record(e.from, e.to, ok);
        if (!ok) {
          reverse.edge_invalidated(graph, cache, e.from, e.to);
          continue;
        }
      }
    }
    g[static_cast<std::size_t>(e.to)] = gv;
    parent[static_cast<std::size_t>(e.to)] = e.from;
    parent_action[static_cast<std::size_t>(e.to)] = e.action;
    if (graph.vertex(e.to).goal && gv < bound) {
      best_goal = e.to;
      bound = gv;
    }
    push_out_edges(e.to);
  }

  ForwardResult result;
  result.edges_validated = validations;
  if (best_goal < 0 || g[static_cast<std::size_t>(best_goal)] >= incumbent_cost) {
    return result;
  }

  std::vector<int> chain;
  for (int v = best_goal; v >= 0; v = parent[static_cast<std::size_t>(v)]) {
    chain.push_back(v);
  }
  std::reverse(chain.begin(), chain.end());

  result.cost = g[static_cast<std::size_t>(best_goal)];
  SolutionPath path;
  PathStep step;
  step.start_state = graph.vertex(chain.front()).state;
  step.waypoints.push_back(graph.vertex(chain.front()).state.robot_config);
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const int v = chain[i];
    const int act = parent_action[static_cast<std::size_t>(v)];
    if (act == kNullStep) {
      step.waypoints.push_back(graph.vertex(v).state.robot_config);
    } else {
      step.action = act;
      path.steps.push_back(std::move(step));
      step = PathStep{};
      step.start_state = graph.vertex(v).state;
      step.waypoints.push_back(graph.vertex(v).state.robot_config);
    }
  }
  step.action = kNullStep;
  path.steps.push_back(std::move(step));
  path.cost = result.cost;
  result.path = std::move(path);
  return result;
}

}  // namespace tmitstar
