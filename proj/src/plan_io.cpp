#include "tmitstar/plan_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tmitstar {

using nlohmann::json;

namespace {

auto vec_to_json(const Vec2& v) -> json { return json::array({v.x(), v.y()}); }

auto json_to_vec(const json& j, const char* what) -> Vec2 {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw PlanFormatError(std::string(what) + " must be a [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

auto state_to_json(const Problem& problem, const HybridState& q) -> json {
  json j;
  j["robot"] = vec_to_json(q.robot_pos());
  json poses = json::array();
  for (const Vec2& p : q.object_poses) {
    poses.push_back(vec_to_json(p));
  }
  j["objects"] = std::move(poses);
  json truths = json::array();
  for (int i = 0; i < static_cast<int>(q.discrete.size()); ++i) {
    if (q.discrete.test(i)) {
      truths.push_back(problem.discrete_symbols[static_cast<std::size_t>(i)]);
    }
  }
  j["discrete"] = std::move(truths);
  if (q.attached) {
    j["attached"] = {
        {"object", problem.scene.objects[static_cast<std::size_t>(q.attached->object)].id},
        {"offset", vec_to_json(q.attached->offset)},
    };
  } else {
    j["attached"] = nullptr;
  }
  return j;
}

auto json_to_state(const Problem& problem, const json& j) -> HybridState {
  HybridState q;
  const Vec2 robot = json_to_vec(j.at("robot"), "robot");
  q.robot_config = Config(2);
  q.robot_config << robot.x(), robot.y();

  const auto& poses = j.at("objects");
  if (!poses.is_array() || poses.size() != problem.scene.objects.size()) {
    throw PlanFormatError("state lists a wrong number of object poses");
  }
  for (const auto& p : poses) {
    q.object_poses.push_back(json_to_vec(p, "object pose"));
  }

  q.discrete = DiscreteState(problem.discrete_symbols.size());
  for (const auto& name : j.at("discrete")) {
    const int idx = problem.discrete_index(name.get<std::string>());
    if (idx < 0) {
      throw PlanFormatError("unknown discrete symbol '" + name.get<std::string>() + "'");
    }
    q.discrete.set(idx, true);
  }

  const auto& attached = j.at("attached");
  if (!attached.is_null()) {
    const auto object = problem.scene.object_index(attached.at("object").get<std::string>());
    if (!object) {
      throw PlanFormatError("unknown attached object '"
                            + attached.at("object").get<std::string>() + "'");
    }
    q.attached = Attachment{*object, json_to_vec(attached.at("offset"), "attachment offset")};
  }
  return q;
}

auto action_index(const Problem& problem, const std::string& name) -> int {
  for (std::size_t i = 0; i < problem.actions.size(); ++i) {
    if (problem.actions[i].name == name) {
      return static_cast<int>(i);
    }
  }
  throw PlanFormatError("unknown action '" + name + "'");
}

}  // namespace

auto serialize_plan(const Problem& problem, const SolutionPath& path) -> std::string {
  json j;
  j["cost"] = path.cost;
  json steps = json::array();
  for (const PathStep& step : path.steps) {
    json s;
    s["start_state"] = state_to_json(problem, step.start_state);
    json pts = json::array();
    for (const Config& c : step.waypoints) {
      pts.push_back(json::array({c[0], c[1]}));
    }
    s["waypoints"] = std::move(pts);
    if (step.action == kNullStep) {
      s["action"] = nullptr;
    } else {
      s["action"] = problem.actions[static_cast<std::size_t>(step.action)].name;
    }
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  return j.dump(2) + "\n";
}

auto parse_plan(const Problem& problem, const std::string& text) -> SolutionPath {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw PlanFormatError(std::string("plan is not valid JSON: ") + e.what());
  }

  SolutionPath path;
  try {
    path.cost = j.at("cost").get<double>();
    for (const auto& s : j.at("steps")) {
      PathStep step;
      step.start_state = json_to_state(problem, s.at("start_state"));
      for (const auto& w : s.at("waypoints")) {
        const Vec2 p = json_to_vec(w, "waypoint");
        Config c(2);
        c << p.x(), p.y();
        step.waypoints.push_back(std::move(c));
      }
      const auto& action = s.at("action");
      step.action = action.is_null() ? kNullStep : action_index(problem, action.get<std::string>());
      path.steps.push_back(std::move(step));
    }
  } catch (const json::exception& e) {
    throw PlanFormatError(std::string("malformed plan: ") + e.what());
  }
  return path;
}

auto save_plan(const Problem& problem, const SolutionPath& path, const std::string& file) -> void {
  std::ofstream out(file);
  if (!out) {
    throw PlanFormatError("cannot write plan file '" + file + "'");
  }
  out << serialize_plan(problem, path);
}

auto load_plan(const Problem& problem, const std::string& file) -> SolutionPath {
  std::ifstream in(file);
  if (!in) {
    throw PlanFormatError("cannot read plan file '" + file + "'");
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_plan(problem, buf.str());
}

}  // namespace tmitstar
