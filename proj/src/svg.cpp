#include "tmitstar/svg.hpp"

#include "tmitstar/predicates.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tmitstar {

namespace {

constexpr double kScale = 60.0;
constexpr double kPad = 12.0;

const char* kStepColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                             "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};

struct Mapper {
  const Rect* bounds;

  [[nodiscard]] auto x(double wx) const -> double { return kPad + (wx - bounds->lo.x()) * kScale; }
  [[nodiscard]] auto y(double wy) const -> double { return kPad + (bounds->hi.y() - wy) * kScale; }
  [[nodiscard]] auto w(double len) const -> double { return len * kScale; }
};

auto rect_svg(std::ostream& out, const Mapper& m, const Rect& r, const std::string& style)
    -> void {
  out << "  <rect x=\"" << m.x(r.lo.x()) << "\" y=\"" << m.y(r.hi.y()) << "\" width=\""
      << m.w(r.width()) << "\" height=\"" << m.w(r.height()) << "\" " << style << "/>\n";
}

auto circle_svg(std::ostream& out, const Mapper& m, const Vec2& c, double radius,
                const std::string& style) -> void {
  out << "  <circle cx=\"" << m.x(c.x()) << "\" cy=\"" << m.y(c.y()) << "\" r=\"" << m.w(radius)
      << "\" " << style << "/>\n";
}

auto scene_body(std::ostream& out, const Mapper& m, const Problem& problem) -> void {
  const Scene& scene = problem.scene;
  rect_svg(out, m, scene.bounds, "fill=\"#fbfbf8\" stroke=\"#333333\" stroke-width=\"2\"");
  for (const SceneRegion& region : scene.regions) {
    rect_svg(out, m, region.rect,
             "fill=\"#e8f0e8\" stroke=\"#88aa88\" stroke-width=\"1\" class=\"region\"");
    out << "  <text x=\"" << m.x(region.rect.lo.x()) + 3 << "\" y=\""
        << m.y(region.rect.hi.y()) + 12 << "\" font-size=\"11\" fill=\"#557755\">" << region.id
        << "</text>\n";
  }
  for (const Rect& obstacle : scene.obstacles) {
    rect_svg(out, m, obstacle, "fill=\"#555555\" class=\"obstacle\"");
  }
  for (const SceneObject& object : scene.objects) {
    const std::string fill = object.color.empty() ? "#888888" : object.color;
    circle_svg(out, m, object.start_pose, object.radius,
               "fill=\"" + fill + "\" stroke=\"#222222\" stroke-width=\"1\" class=\"object\"");
  }
  circle_svg(out, m, Vec2(scene.robot_start[0], scene.robot_start[1]), scene.robot_radius,
             "fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" stroke-dasharray=\"4 2\" "
             "class=\"robot-start\"");
}

auto document(const Problem& problem, const std::string& body) -> std::string {
  const Rect& bounds = problem.scene.bounds;
  const double width = bounds.width() * kScale + 2 * kPad;
  const double height = bounds.height() * kScale + 2 * kPad;
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << body << "</svg>\n";
  return out.str();
}

}  // namespace

auto render_scene_svg(const Problem& problem) -> std::string {
  Mapper m{&problem.scene.bounds};
  std::ostringstream body;
  scene_body(body, m, problem);
  return document(problem, body.str());
}

auto render_plan_svg(const Problem& problem, const SolutionPath& path) -> std::string {
  Mapper m{&problem.scene.bounds};
  std::ostringstream body;
  scene_body(body, m, problem);

  int color = 0;
  for (const PathStep& step : path.steps) {
    body << "  <polyline class=\"step\" fill=\"none\" stroke=\"" << kStepColors[color % 8]
         << "\" stroke-width=\"2\" points=\"";
    for (const Config& c : step.waypoints) {
      body << m.x(c[0]) << "," << m.y(c[1]) << " ";
    }
    body << "\"/>\n";
    if (step.action != kNullStep) {
      const Config& at = step.waypoints.back();
      const std::string& name = problem.actions[static_cast<std::size_t>(step.action)].name;
      body << "  <circle class=\"action-marker\" cx=\"" << m.x(at[0]) << "\" cy=\"" << m.y(at[1])
           << "\" r=\"5\" fill=\"" << kStepColors[color % 8]
           << "\" stroke=\"#000000\"><title>" << name << "</title></circle>\n";
    }
    ++color;
  }

  // Final rest poses, from replaying the actions over the step states.
  if (!path.steps.empty()) {
    HybridState final_state = path.steps.back().start_state;
    final_state.set_robot_config(path.steps.back().waypoints.back());
    for (std::size_t o = 0; o < final_state.object_poses.size(); ++o) {
      circle_svg(body, m, final_state.object_poses[o],
                 problem.scene.objects[o].radius,
                 "fill=\"none\" stroke=\"#222222\" stroke-width=\"1\" stroke-dasharray=\"3 2\" "
                 "class=\"object-final\"");
    }
  }
  return document(problem, body.str());
}

auto save_svg(const std::string& svg, const std::string& file) -> void {
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write SVG file '" + file + "'");
  }
  out << svg;
}

}  // namespace tmitstar
