#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>

namespace tmitstar {

using Vec2   = Eigen::Vector2d;
using Config = Eigen::VectorXd;

// Axis-aligned rectangle given by its lower-left and upper-right corners.
struct Rect {
  Vec2 lo = Vec2::Zero();
  Vec2 hi = Vec2::Zero();

  [[nodiscard]] auto width() const -> double { return hi.x() - lo.x(); }
  [[nodiscard]] auto height() const -> double { return hi.y() - lo.y(); }
  [[nodiscard]] auto center() const -> Vec2 { return 0.5 * (lo + hi); }
  [[nodiscard]] auto area() const -> double { return std::max(0.0, width()) * std::max(0.0, height()); }

  [[nodiscard]] auto contains(const Vec2& p) const -> bool {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
  }

  // Shrinks the rectangle by `margin` on every side. A rectangle too small to
  // shrink collapses to its center point instead of inverting.
  [[nodiscard]] auto shrunk(double margin) const -> Rect {
    Rect r{lo.array() + margin, hi.array() - margin};
    const auto c = center();
    if (r.lo.x() > r.hi.x()) {
      r.lo.x() = r.hi.x() = c.x();
    }

    if (r.lo.y() > r.hi.y()) {
      r.lo.y() = r.hi.y() = c.y();
    }

    return r;
  }

  [[nodiscard]] auto operator==(const Rect& o) const -> bool { return lo == o.lo && hi == o.hi; }
};

[[nodiscard]] inline auto clamp_to_rect(const Vec2& p, const Rect& r) -> Vec2 {
  return {std::clamp(p.x(), r.lo.x(), r.hi.x()), std::clamp(p.y(), r.lo.y(), r.hi.y())};
}

// Distance from a point to a rectangle; zero inside or on the boundary.
[[nodiscard]] inline auto dist_to_rect(const Vec2& p, const Rect& r) -> double {
  return (p - clamp_to_rect(p, r)).norm();
}

// Discs overlap only when they strictly interpenetrate; tangency is allowed.
[[nodiscard]] inline auto discs_overlap(const Vec2& a, double ra, const Vec2& b, double rb) -> bool {
  const double rr = ra + rb;
  return (a - b).squaredNorm() < rr * rr;
}

[[nodiscard]] inline auto disc_rect_overlap(const Vec2& c, double r, const Rect& rect) -> bool {
  const double d = dist_to_rect(c, rect);
  return d < r;
}

// True when the disc lies entirely inside the rectangle.
[[nodiscard]] inline auto disc_in_rect(const Vec2& c, double r, const Rect& rect) -> bool {
  return rect.shrunk(r).contains(c) && rect.width() >= 2.0 * r && rect.height() >= 2.0 * r;
}

// Distance from a point to the segment [a, b].
[[nodiscard]] inline auto dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b)
    -> double {
  const Vec2 ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 <= 0.0) {
    return (p - a).norm();
  }

  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

[[nodiscard]] inline auto segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                                             const Vec2& d) -> bool {
  const auto orient = [](const Vec2& p, const Vec2& q, const Vec2& r) {
    const double v = (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
    return (v > 0.0) - (v < 0.0);
  };
  const int o1 = orient(a, b, c);
  const int o2 = orient(a, b, d);
  const int o3 = orient(c, d, a);
  const int o4 = orient(c, d, b);
  if (o1 != o2 && o3 != o4) {
    return true;
  }

  const auto on = [&](const Vec2& p, const Vec2& q, const Vec2& r) {
    return orient(p, q, r) == 0 && r.x() >= std::min(p.x(), q.x()) && r.x() <= std::max(p.x(), q.x())
           && r.y() >= std::min(p.y(), q.y()) && r.y() <= std::max(p.y(), q.y());
  };
  return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

[[nodiscard]] inline auto dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c,
                                               const Vec2& d) -> double {
  if (segments_intersect(a, b, c, d)) {
    return 0.0;
  }

  return std::min(std::min(dist_point_segment(c, a, b), dist_point_segment(d, a, b)),
                  std::min(dist_point_segment(a, c, d), dist_point_segment(b, c, d)));
}

// Distance from the segment [a, b] to the rectangle; zero when they touch or
// the segment passes through it.
[[nodiscard]] inline auto dist_segment_rect(const Vec2& a, const Vec2& b, const Rect& rect)
    -> double {
  if (rect.contains(a) || rect.contains(b)) {
    return 0.0;
  }

  const Vec2 c0 = rect.lo;
  const Vec2 c1{rect.hi.x(), rect.lo.y()};
  const Vec2 c2 = rect.hi;
  const Vec2 c3{rect.lo.x(), rect.hi.y()};
  double best = dist_segment_segment(a, b, c0, c1);
  best = std::min(best, dist_segment_segment(a, b, c1, c2));
  best = std::min(best, dist_segment_segment(a, b, c2, c3));
  return std::min(best, dist_segment_segment(a, b, c3, c0));
}

}  // namespace tmitstar
