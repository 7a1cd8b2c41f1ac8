#include "tmitstar/predicates.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace tmitstar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[nodiscard]] auto object_pose(const GeoSymbol& sym, const HybridState& q) -> Vec2 {
  return q.object_poses[static_cast<std::size_t>(sym.object)];
}

[[nodiscard]] auto object_attached(const GeoSymbol& sym, const HybridState& q) -> bool {
  return q.attached && q.attached->object == sym.object;
}

// Region rectangle eroded so that containment of the disc center is
// equivalent to containment of the whole disc. A region too small for the
// disc makes the predicate unsatisfiable.
[[nodiscard]] auto eroded_region(const Rect& rect, double radius) -> std::pair<bool, Rect> {
  if (rect.width() < 2.0 * radius || rect.height() < 2.0 * radius) {
    return {false, rect};
  }

  return {true, rect.shrunk(radius)};
}

[[nodiscard]] auto rect_distance_gradient(const Vec2& p, const Rect& rect) -> Vec2 {
  const Vec2 diff = p - clamp_to_rect(p, rect);
  const double d = diff.norm();
  if (d <= 0.0) {
    return Vec2::Zero();
  }

  return diff / d;
}

}  // namespace

auto geo_distance(const GeoSymbol& sym, const HybridState& q, const Scene& scene) -> double {
  switch (sym.kind) {
    case GeoPredKind::Near: {
      const double gap = (q.robot_pos() - object_pose(sym, q)).norm() - scene.grasp_reach;
      return std::max(0.0, gap);
    }
    case GeoPredKind::InRegion: {
      const auto& region = scene.regions[static_cast<std::size_t>(sym.region)];
      const double radius = scene.objects[static_cast<std::size_t>(sym.object)].radius;
      const auto [fits, target] = eroded_region(region.rect, radius);
      if (!fits) {
        return kInf;
      }

      return dist_to_rect(object_pose(sym, q), target);
    }
    case GeoPredKind::RobotInRegion: {
      const auto& region = scene.regions[static_cast<std::size_t>(sym.region)];
      const auto [fits, target] = eroded_region(region.rect, scene.robot_radius);
      if (!fits) {
        return kInf;
      }

      return dist_to_rect(q.robot_pos(), target);
    }
  }

  return kInf;
}

auto geo_gradient(const GeoSymbol& sym, const HybridState& q, const Scene& scene) -> Config {
  Config g = Config::Zero(q.robot_config.size());
  switch (sym.kind) {
    case GeoPredKind::Near: {
      // A held object moves with the robot, so the gap is constant.
      if (object_attached(sym, q)) {
        return g;
      }

      const Vec2 diff = q.robot_pos() - object_pose(sym, q);
      const double d = diff.norm();
      if (d - scene.grasp_reach > 0.0 && d > 0.0) {
        g.head<2>() = diff / d;
      }

      return g;
    }
    case GeoPredKind::InRegion: {
      if (!object_attached(sym, q)) {
        return g;
      }

      const auto& region = scene.regions[static_cast<std::size_t>(sym.region)];
      const double radius = scene.objects[static_cast<std::size_t>(sym.object)].radius;
      const auto [fits, target] = eroded_region(region.rect, radius);
      if (!fits) {
        return g;
      }

      g.head<2>() = rect_distance_gradient(object_pose(sym, q), target);
      return g;
    }
    case GeoPredKind::RobotInRegion: {
      const auto& region = scene.regions[static_cast<std::size_t>(sym.region)];
      const auto [fits, target] = eroded_region(region.rect, scene.robot_radius);
      if (!fits) {
        return g;
      }

      g.head<2>() = rect_distance_gradient(q.robot_pos(), target);
      return g;
    }
  }

  return g;
}

auto geo_holds(const GeoSymbol& sym, const HybridState& q, const Scene& scene) -> bool {
  switch (sym.kind) {
    case GeoPredKind::Near:
      return (q.robot_pos() - object_pose(sym, q)).norm() <= scene.grasp_reach;
    case GeoPredKind::InRegion:
      return disc_in_rect(object_pose(sym, q),
                          scene.objects[static_cast<std::size_t>(sym.object)].radius,
                          scene.regions[static_cast<std::size_t>(sym.region)].rect);
    case GeoPredKind::RobotInRegion:
      return disc_in_rect(q.robot_pos(), scene.robot_radius,
                          scene.regions[static_cast<std::size_t>(sym.region)].rect);
  }

  return false;
}

auto conjunction_distance(const Problem& problem, const std::vector<int>& members,
                          const HybridState& q) -> double {
  double total = 0.0;
  for (const int m : members) {
    total += geo_distance(problem.geo_symbols[static_cast<std::size_t>(m)], q, problem.scene);
  }

  return total;
}

auto conjunction_gradient(const Problem& problem, const std::vector<int>& members,
                          const HybridState& q) -> Config {
  Config g = Config::Zero(q.robot_config.size());
  for (const int m : members) {
    g += geo_gradient(problem.geo_symbols[static_cast<std::size_t>(m)], q, problem.scene);
  }

  return g;
}

auto project_to_manifold(const Problem& problem, const std::vector<int>& members,
                         const HybridState& seed, const ProjectionOptions& opts)
    -> ProjectionResult {
  ProjectionResult res;
  res.state = seed;

  double d = conjunction_distance(problem, members, res.state);
  int iter = 0;
  while (d > opts.tolerance) {
    if (iter >= opts.max_iterations || !std::isfinite(d)) {
      res.status = std::isfinite(d) ? ProjectionStatus::NonConvergence
                                    : ProjectionStatus::LocalMinimum;
      res.distance = d;
      res.iterations = iter;
      return res;
    }

    const Config g = conjunction_gradient(problem, members, res.state);
    const double gn2 = g.squaredNorm();
    if (gn2 < 1e-18) {
      res.status = ProjectionStatus::LocalMinimum;
      res.distance = d;
      res.iterations = iter;
      return res;
    }

    // NOTE: for a locally affine distance this step lands on the zero set.
    double t = d / gn2;
    bool accepted = false;
    HybridState probe = res.state;
    for (int b = 0; b < opts.max_backtracks; ++b) {
      probe.set_robot_config(res.state.robot_config - t * g);
      const double dc = conjunction_distance(problem, members, probe);
      if (dc <= d - opts.armijo_c * t * gn2) {
        res.state = probe;
        d = dc;
        accepted = true;
        break;
      }

      t *= 0.5;
    }

    if (!accepted) {
      res.status = ProjectionStatus::LocalMinimum;
      res.distance = d;
      res.iterations = iter;
      return res;
    }

    ++iter;
  }

  res.distance = d;
  res.iterations = iter;
  res.status = is_valid(res.state, problem.scene) ? ProjectionStatus::Success
                                                  : ProjectionStatus::InvalidState;
  return res;
}

auto check_gradient(const GeoSymbol& sym, const HybridState& q, const Scene& scene, double step,
                    double rel_tol) -> bool {
  const double d0 = geo_distance(sym, q, scene);
  if (d0 <= 0.0 || !std::isfinite(d0)) {
    throw std::invalid_argument("check_gradient requires a state strictly off the zero set");
  }

  const Config g = geo_gradient(sym, q, scene);
  Config fd = Config::Zero(q.robot_config.size());
  HybridState probe = q;
  for (Eigen::Index k = 0; k < q.robot_config.size(); ++k) {
    Config c = q.robot_config;
    c[k] += step;
    probe.set_robot_config(c);
    const double dp = geo_distance(sym, probe, scene);
    c[k] -= 2.0 * step;
    probe.set_robot_config(c);
    const double dm = geo_distance(sym, probe, scene);
    fd[k] = (dp - dm) / (2.0 * step);
  }

  return (g - fd).norm() <= rel_tol * std::max(1.0, fd.norm());
}

}  // namespace tmitstar
