#include "tmitstar/oracles.hpp"

#include "tmitstar/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tmitstar {

auto discrete_bfs_oracle(const DiscreteDomain& domain, const DiscreteState& init,
                         const Formula& goal, long state_cap) -> BfsOracleResult {
  BfsOracleResult result;
  if (eval_formula(goal, init)) {
    result.status = OracleStatus::Solved;
    result.makespan = 0;
    result.states_explored = 1;
    return result;
  }

  std::unordered_map<DiscreteState, int, DiscreteStateHash> depth;
  std::deque<DiscreteState> frontier;
  depth.emplace(init, 0);
  frontier.push_back(init);

  while (!frontier.empty()) {
    const DiscreteState s = std::move(frontier.front());
    frontier.pop_front();
    const int d = depth.at(s);
    for (const DiscreteAction& a : domain.actions) {
      if (!eval_formula(a.pre, s)) {
        continue;
      }

      DiscreteState next = s;
      for (const int sym : a.add) {
        next.set(sym, true);
      }
      for (const int sym : a.del) {
        next.set(sym, false);
      }

      if (depth.count(next) != 0) {
        continue;
      }

      if (eval_formula(goal, next)) {
        result.status = OracleStatus::Solved;
        result.makespan = d + 1;
        result.states_explored = static_cast<long>(depth.size()) + 1;
        return result;
      }

      depth.emplace(next, d + 1);
      if (static_cast<long>(depth.size()) > state_cap) {
        result.status = OracleStatus::CapExceeded;
        result.states_explored = static_cast<long>(depth.size());
        return result;
      }

      frontier.push_back(next);
    }
  }

  result.status = OracleStatus::Unsolvable;
  result.states_explored = static_cast<long>(depth.size());
  return result;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A static world as the lattice search sees it: every object is either at a
// fixed pose or rides with the robot at a fixed offset.
struct WorldView {
  const Scene* scene = nullptr;
  std::vector<Vec2> poses;
  int held = -1;
  Vec2 offset = Vec2::Zero();
};

auto disc_stays_valid(const WorldView& w, const Vec2& a, const Vec2& b, double radius, int self)
    -> bool {
  const Rect inner = w.scene->bounds.shrunk(radius);
  if (!inner.contains(a) || !inner.contains(b) || w.scene->bounds.width() < 2.0 * radius
      || w.scene->bounds.height() < 2.0 * radius) {
    return false;
  }
  for (const Rect& obstacle : w.scene->obstacles) {
    if (dist_segment_rect(a, b, obstacle) < radius) {
      return false;
    }
  }
  for (int o = 0; o < static_cast<int>(w.poses.size()); ++o) {
    if (o == w.held || o == self) {
      continue;
    }
    const double clearance = radius + w.scene->objects[static_cast<std::size_t>(o)].radius;
    if (dist_point_segment(w.poses[static_cast<std::size_t>(o)], a, b) < clearance) {
      return false;
    }
  }
  return true;
}

// Exact feasibility of the straight robot motion a -> b: the swept robot
// capsule (and the carried object's, when held) stays in bounds and clear of
// obstacles and resting objects. Tangency is allowed, as in is_valid.
auto edge_ok(const WorldView& w, const Vec2& a, const Vec2& b) -> bool {
  if (!disc_stays_valid(w, a, b, w.scene->robot_radius, -1)) {
    return false;
  }
  if (w.held >= 0) {
    const double r = w.scene->objects[static_cast<std::size_t>(w.held)].radius;
    return disc_stays_valid(w, a + w.offset, b + w.offset, r, w.held);
  }
  return true;
}

auto node_ok(const WorldView& w, const Vec2& p) -> bool { return edge_ok(w, p, p); }

// Robot-position lattice aligned to the workspace corner, so halving the
// resolution keeps every coarse node (and every coarse edge as two collinear
// fine edges).
struct Lattice {
  Rect bounds;
  double res = 0.1;
  int nx = 0;
  int ny = 0;
  std::vector<Vec2> pts;                                // lattice first, extras appended
  int lattice_count = 0;
  std::unordered_map<int, std::vector<int>> extra_links;  // symmetric, node -> extras

  explicit Lattice(const Rect& b, double resolution) : bounds(b), res(resolution) {
    nx = static_cast<int>(std::floor(b.width() / res + 1e-9)) + 1;
    ny = static_cast<int>(std::floor(b.height() / res + 1e-9)) + 1;
    pts.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        pts.emplace_back(b.lo.x() + i * res, b.lo.y() + j * res);
      }
    }
    lattice_count = static_cast<int>(pts.size());
  }

  // Appends an off-lattice node linked to every lattice node within 1.6 res.
  auto add_extra(const Vec2& p) -> int {
    const int id = static_cast<int>(pts.size());
    pts.push_back(p);
    const int i0 = std::max(0, static_cast<int>(std::floor((p.x() - bounds.lo.x()) / res)) - 2);
    const int j0 = std::max(0, static_cast<int>(std::floor((p.y() - bounds.lo.y()) / res)) - 2);
    for (int j = j0; j < std::min(ny, j0 + 5); ++j) {
      for (int i = i0; i < std::min(nx, i0 + 5); ++i) {
        const int node = j * nx + i;
        if ((pts[static_cast<std::size_t>(node)] - p).norm() <= 1.6 * res) {
          extra_links[node].push_back(id);
          extra_links[id].push_back(node);
        }
      }
    }
    return id;
  }

  template <typename Fn>
  auto for_neighbors(int u, Fn&& fn) const -> void {
    if (u < lattice_count) {
      const int i = u % nx;
      const int j = u / nx;
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if (di == 0 && dj == 0) {
            continue;
          }
          const int ii = i + di;
          const int jj = j + dj;
          if (ii >= 0 && ii < nx && jj >= 0 && jj < ny) {
            fn(jj * nx + ii);
          }
        }
      }
    }
    if (const auto it = extra_links.find(u); it != extra_links.end()) {
      for (const int v : it->second) {
        fn(v);
      }
    }
  }
};

// Dijkstra over the lattice with exact edge feasibility; returns distances.
auto lattice_distances(const Lattice& lat, const WorldView& world, int source, long* budget)
    -> std::vector<double> {
  const auto n = lat.pts.size();
  std::vector<double> dist(n, kInf);
  std::vector<signed char> valid(n, -1);
  const auto usable = [&](int v) {
    auto& flag = valid[static_cast<std::size_t>(v)];
    if (flag < 0) {
      flag = node_ok(world, lat.pts[static_cast<std::size_t>(v)]) ? 1 : 0;
    }
    return flag == 1;
  };

  if (budget != nullptr) {
    *budget -= static_cast<long>(n);
  }
  if (!usable(source)) {
    return dist;
  }

  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[static_cast<std::size_t>(source)] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(u)]) {
      continue;
    }
    lat.for_neighbors(u, [&](int v) {
      if (!usable(v)) {
        return;
      }
      const double step = (lat.pts[static_cast<std::size_t>(u)] - lat.pts[static_cast<std::size_t>(v)]).norm();
      const double nd = d + step;
      if (nd >= dist[static_cast<std::size_t>(v)]) {
        return;
      }
      if (!edge_ok(world, lat.pts[static_cast<std::size_t>(u)], lat.pts[static_cast<std::size_t>(v)])) {
        return;
      }
      dist[static_cast<std::size_t>(v)] = nd;
      heap.emplace(nd, v);
    });
  }
  return dist;
}

// A placement demand extracted from the goal: object `object` must come to
// rest inside `target` (already eroded by the object's radius).
struct PlacementGoal {
  int object = -1;
  Rect target;
};

struct GoalShape {
  bool supported = true;
  std::string reason;
  std::vector<PlacementGoal> placements;
  std::vector<Rect> robot_targets;  // eroded by the robot radius
};

auto flatten_conjunction(const Formula& f, std::vector<int>& atoms) -> bool {
  switch (f.kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::Atom:
      atoms.push_back(f.atom);
      return true;
    case Formula::Kind::And: {
      for (const Formula& c : f.children) {
        if (!flatten_conjunction(c, atoms)) {
          return false;
        }
      }
      return true;
    }
    case Formula::Kind::Not:
    case Formula::Kind::Or:
      return false;
  }
  return false;
}

auto analyze_goal(const Problem& problem) -> GoalShape {
  GoalShape shape;
  const Scene& scene = problem.scene;

  std::vector<int> atoms;
  if (!flatten_conjunction(problem.goal.discrete, atoms)) {
    shape.supported = false;
    shape.reason = "goal formula is not a conjunction of placements";
    return shape;
  }

  // The grounding names discrete placement symbols on(<object>,<region>).
  std::unordered_map<int, std::pair<int, int>> on_atoms;
  for (int o = 0; o < static_cast<int>(scene.objects.size()); ++o) {
    for (int r = 0; r < static_cast<int>(scene.regions.size()); ++r) {
      const std::string name =
          "on(" + scene.objects[static_cast<std::size_t>(o)].id + ","
          + scene.regions[static_cast<std::size_t>(r)].id + ")";
      const int idx = problem.discrete_index(name);
      if (idx >= 0) {
        on_atoms.emplace(idx, std::make_pair(o, r));
      }
    }
  }

  std::unordered_set<int> seen_objects;
  for (const int atom : atoms) {
    if (problem.init_discrete.test(atom)) {
      continue;  // already satisfied; consistent instances keep it satisfied
    }
    const auto it = on_atoms.find(atom);
    if (it == on_atoms.end()) {
      shape.supported = false;
      shape.reason = "goal atom '" + problem.discrete_symbols[static_cast<std::size_t>(atom)]
                     + "' is not a placement";
      return shape;
    }
    const auto [o, r] = it->second;
    if (!seen_objects.insert(o).second) {
      shape.supported = false;
      shape.reason = "two placement goals for one object";
      return shape;
    }
    const double radius = scene.objects[static_cast<std::size_t>(o)].radius;
    const Rect& rect = scene.regions[static_cast<std::size_t>(r)].rect;
    if (rect.width() < 2.0 * radius || rect.height() < 2.0 * radius) {
      shape.supported = false;
      shape.reason = "goal region is too small for the object";
      return shape;
    }
    shape.placements.push_back({o, rect.shrunk(radius)});
  }

  for (const int member : problem.goal.geometric) {
    const GeoSymbol& sym = problem.geo_symbols[static_cast<std::size_t>(member)];
    if (sym.kind == GeoPredKind::RobotInRegion) {
      const Rect& rect = scene.regions[static_cast<std::size_t>(sym.region)].rect;
      if (rect.width() < 2.0 * scene.robot_radius || rect.height() < 2.0 * scene.robot_radius) {
        shape.supported = false;
        shape.reason = "robot goal region is too small for the robot";
        return shape;
      }
      shape.robot_targets.push_back(rect.shrunk(scene.robot_radius));
      continue;
    }
    shape.supported = false;
    shape.reason = "geometric goal member beyond robot-in-region";
    return shape;
  }

  if (!shape.placements.empty() && !shape.robot_targets.empty()) {
    shape.supported = false;
    shape.reason = "mixed placement and robot-position goals";
    return shape;
  }

  return shape;
}

struct PhaseResult {
  bool ok = false;
  double cost = kInf;
  Vec2 end_robot = Vec2::Zero();
  Vec2 placed_pose = Vec2::Zero();
};

// Cheapest pick-carry-place of one object into `target`, starting the robot
// at `start` with every other object resting at `world.poses`. Candidate
// grasp positions are lattice nodes inside the reach annulus plus a ring of
// off-lattice nodes, so a reach band narrower than the lattice spacing still
// admits grasps.
auto move_one_object(const Problem& problem, const Lattice& base, const WorldView& world,
                     const Vec2& start, int object, const Rect& target, long* budget)
    -> PhaseResult {
  PhaseResult result;
  const Scene& scene = problem.scene;
  const Vec2 pose = world.poses[static_cast<std::size_t>(object)];
  const double r_obj = scene.objects[static_cast<std::size_t>(object)].radius;
  const double reach_lo = scene.robot_radius + r_obj;
  const double reach_hi = scene.grasp_reach;
  if (reach_lo > reach_hi) {
    return result;  // the object is too large to grasp at all
  }

  Lattice lat = base;
  const int start_node = lat.add_extra(start);
  std::vector<int> pick_nodes;
  for (int v = 0; v < lat.lattice_count; ++v) {
    const double d = (lat.pts[static_cast<std::size_t>(v)] - pose).norm();
    if (d >= reach_lo && d <= reach_hi) {
      pick_nodes.push_back(v);
    }
  }
  const int ring = 72;
  for (const double radius : {reach_hi, 0.5 * (reach_lo + reach_hi)}) {
    for (int k = 0; k < ring; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / ring;
      pick_nodes.push_back(lat.add_extra(pose + radius * Vec2{std::cos(theta), std::sin(theta)}));
    }
  }

  const std::vector<double> approach = lattice_distances(lat, world, start_node, budget);
  if (*budget < 0) {
    return result;
  }

  // Cheapest-first over grasp candidates, cut off once even a straight-line
  // completion cannot beat the best found.
  std::sort(pick_nodes.begin(), pick_nodes.end(), [&](int a, int b) {
    return approach[static_cast<std::size_t>(a)] < approach[static_cast<std::size_t>(b)];
  });

  WorldView carry = world;
  carry.held = object;
  for (const int p : pick_nodes) {
    const double d1 = approach[static_cast<std::size_t>(p)];
    const Vec2 at = lat.pts[static_cast<std::size_t>(p)];
    if (d1 + std::max(0.0, dist_to_rect(pose, target) - reach_hi) >= result.cost) {
      break;
    }
    if (*budget < 0) {
      return PhaseResult{};
    }

    carry.offset = pose - at;
    const std::vector<double> deliver = lattice_distances(lat, carry, p, budget);
    for (int c = 0; c < static_cast<int>(lat.pts.size()); ++c) {
      const double total = d1 + deliver[static_cast<std::size_t>(c)];
      if (total >= result.cost) {
        continue;
      }
      const Vec2 rest = lat.pts[static_cast<std::size_t>(c)] + carry.offset;
      if (dist_to_rect(rest, target) > 0.0) {
        continue;
      }
      result.ok = true;
      result.cost = total;
      result.end_robot = lat.pts[static_cast<std::size_t>(c)];
      result.placed_pose = rest;
    }
  }
  return result;
}

auto displacement_lower_bound(const Problem& problem, const GoalShape& shape) -> double {
  const Scene& scene = problem.scene;
  const Vec2 start = problem.initial_state().robot_pos();
  if (!shape.robot_targets.empty()) {
    double lo = 0.0;
    for (const Rect& target : shape.robot_targets) {
      lo = std::max(lo, dist_to_rect(start, target));
    }
    return lo;
  }

  double travel = 0.0;
  double approach = kInf;
  for (const PlacementGoal& goal : shape.placements) {
    const Vec2 pose = scene.objects[static_cast<std::size_t>(goal.object)].start_pose;
    travel += dist_to_rect(pose, goal.target);
    approach = std::min(approach, std::max(0.0, (start - pose).norm() - scene.grasp_reach));
  }
  return travel + (shape.placements.empty() ? 0.0 : approach);
}

}  // namespace

auto grid_tmp_oracle(const Problem& problem, double resolution, long node_cap) -> OracleBracket {
  OracleBracket bracket;
  const Scene& scene = problem.scene;
  const HybridState init = problem.initial_state();

  if (goal_holds(problem, init, kSatisfactionTol)) {
    bracket.status = OracleStatus::Solved;
    bracket.lower = 0.0;
    bracket.upper = 0.0;
    return bracket;
  }

  const GoalShape shape = analyze_goal(problem);
  if (!shape.supported) {
    bracket.status = OracleStatus::CapExceeded;
    bracket.reason = shape.reason;
    return bracket;
  }
  if (shape.placements.size() > 2) {
    bracket.status = OracleStatus::CapExceeded;
    bracket.reason = "more than two objects to place";
    return bracket;
  }

  bracket.lower = displacement_lower_bound(problem, shape);
  long budget = node_cap;
  const Lattice base(scene.bounds, resolution);
  WorldView world;
  world.scene = &scene;
  world.poses = init.object_poses;
  const Vec2 start = init.robot_pos();

  const auto refused = [&] {
    bracket.status = OracleStatus::CapExceeded;
    bracket.reason = "lattice node budget exceeded";
    return bracket;
  };

  if (!shape.robot_targets.empty()) {
    Lattice lat = base;
    const int start_node = lat.add_extra(start);
    const std::vector<double> dist = lattice_distances(lat, world, start_node, &budget);
    if (budget < 0) {
      return refused();
    }
    for (int v = 0; v < static_cast<int>(lat.pts.size()); ++v) {
      const Vec2& p = lat.pts[static_cast<std::size_t>(v)];
      const bool inside = std::all_of(shape.robot_targets.begin(), shape.robot_targets.end(),
                                      [&](const Rect& t) { return dist_to_rect(p, t) <= 0.0; });
      if (inside) {
        bracket.upper = std::min(bracket.upper, dist[static_cast<std::size_t>(v)]);
      }
    }

    bracket.status = std::isfinite(bracket.upper) ? OracleStatus::Solved : OracleStatus::Unsolvable;
    if (bracket.status == OracleStatus::Unsolvable) {
      bracket.reason = "no lattice path reaches the robot goal at resolution "
                       + std::to_string(resolution);
    }
    return bracket;
  }

  if (shape.placements.size() == 1) {
    const PlacementGoal& goal = shape.placements.front();
    const PhaseResult r =
        move_one_object(problem, base, world, start, goal.object, goal.target, &budget);
    if (budget < 0) {
      return refused();
    }
    if (r.ok) {
      bracket.status = OracleStatus::Solved;
      bracket.upper = r.cost;
    } else {
      bracket.status = OracleStatus::Unsolvable;
      bracket.reason =
          "no feasible pick and place at resolution " + std::to_string(resolution);
    }
    return bracket;
  }

  // Two placements: the better of the two sequential orders. Interleaved
  // plans may be cheaper, so this is an upper bound only.
  for (int first = 0; first < 2; ++first) {
    const PlacementGoal& a = shape.placements[static_cast<std::size_t>(first)];
    const PlacementGoal& b = shape.placements[static_cast<std::size_t>(1 - first)];
    const PhaseResult ra = move_one_object(problem, base, world, start, a.object, a.target, &budget);
    if (budget < 0) {
      return refused();
    }
    if (!ra.ok) {
      continue;
    }
    WorldView after = world;
    after.poses[static_cast<std::size_t>(a.object)] = ra.placed_pose;
    const PhaseResult rb =
        move_one_object(problem, base, after, ra.end_robot, b.object, b.target, &budget);
    if (budget < 0) {
      return refused();
    }
    if (rb.ok) {
      bracket.upper = std::min(bracket.upper, ra.cost + rb.cost);
    }
  }

  bracket.status = std::isfinite(bracket.upper) ? OracleStatus::Solved : OracleStatus::Unsolvable;
  if (bracket.status == OracleStatus::Unsolvable) {
    bracket.reason = "no sequential pick-and-place order is feasible at resolution "
                     + std::to_string(resolution);
  }
  return bracket;
}

}  // namespace tmitstar
