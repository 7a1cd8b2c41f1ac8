#include "tmitstar/problem_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace tmitstar {

using nlohmann::json;

namespace {

auto require(const json& j, const char* key, const char* where) -> const json& {
  const auto it = j.find(key);
  if (it == j.end()) {
    throw ProblemFormatError(std::string("missing field '") + key + "' in " + where);
  }

  return *it;
}

auto as_rect(const json& j, const char* where) -> Rect {
  if (!j.is_array() || j.size() != 4) {
    throw ProblemFormatError(std::string("expected [x0, y0, x1, y1] for ") + where);
  }

  const Rect r{{j[0].get<double>(), j[1].get<double>()}, {j[2].get<double>(), j[3].get<double>()}};
  if (r.lo.x() >= r.hi.x() || r.lo.y() >= r.hi.y()) {
    throw ProblemFormatError(std::string("degenerate rectangle for ") + where);
  }

  return r;
}

auto as_vec2(const json& j, const char* where) -> Vec2 {
  if (!j.is_array() || j.size() != 2) {
    throw ProblemFormatError(std::string("expected [x, y] for ") + where);
  }

  return {j[0].get<double>(), j[1].get<double>()};
}

struct Atom {
  std::string pred;
  std::vector<std::string> args;
};

auto parse_atom(const std::string& raw) -> Atom {
  std::string text;
  std::copy_if(raw.begin(), raw.end(), std::back_inserter(text),
               [](char c) { return c != ' ' && c != '\t'; });

  Atom atom;
  const auto open = text.find('(');
  if (open == std::string::npos) {
    atom.pred = text;
    return atom;
  }

  if (text.back() != ')') {
    throw ProblemFormatError("malformed atom: " + raw);
  }

  atom.pred = text.substr(0, open);
  std::stringstream args(text.substr(open + 1, text.size() - open - 2));
  std::string arg;
  while (std::getline(args, arg, ',')) {
    atom.args.push_back(arg);
  }

  return atom;
}

auto raw_name(const Atom& atom) -> std::string {
  if (atom.args.empty()) {
    return atom.pred;
  }

  std::string s = atom.pred + "(";
  for (std::size_t i = 0; i < atom.args.size(); ++i) {
    s += (i > 0 ? "," : "") + atom.args[i];
  }

  return s + ")";
}

// Resolves an atom against the discrete table first, then the geometric one.
struct ResolvedAtom {
  bool geometric = false;
  int index = -1;
};

auto resolve_atom(const Problem& p, const std::string& raw) -> ResolvedAtom {
  const Atom atom = parse_atom(raw);
  const auto need_object = [&](const std::string& id) {
    const auto idx = p.scene.object_index(id);
    if (!idx) {
      throw ProblemFormatError("unknown object '" + id + "' in atom " + raw);
    }

    return *idx;
  };
  const auto need_region = [&](const std::string& id) {
    const auto idx = p.scene.region_index(id);
    if (!idx) {
      throw ProblemFormatError("unknown region '" + id + "' in atom " + raw);
    }

    return *idx;
  };
  const auto arity = [&](std::size_t n) {
    if (atom.args.size() != n) {
      throw ProblemFormatError("wrong arity in atom " + raw);
    }
  };

  if (atom.pred == "handempty") {
    arity(0);
    return {false, p.discrete_index("handempty")};
  }

  if (atom.pred == "holding") {
    arity(1);
    need_object(atom.args[0]);
    return {false, p.discrete_index(raw_name(atom))};
  }

  if (atom.pred == "on") {
    arity(2);
    need_object(atom.args[0]);
    need_region(atom.args[1]);
    return {false, p.discrete_index(raw_name(atom))};
  }

  if (atom.pred == "near") {
    arity(1);
    return {true, p.geo_index({GeoPredKind::Near, need_object(atom.args[0]), -1, ""})};
  }

  if (atom.pred == "in_region") {
    arity(2);
    return {true, p.geo_index({GeoPredKind::InRegion, need_object(atom.args[0]),
                               need_region(atom.args[1]), ""})};
  }

  if (atom.pred == "robot_in_region") {
    arity(1);
    return {true, p.geo_index({GeoPredKind::RobotInRegion, -1, need_region(atom.args[0]), ""})};
  }

  throw ProblemFormatError("unknown predicate in atom " + raw);
}

// Builds the derived symbol tables and the grounded pick/place action set.
auto ground(Problem& p) -> void {
  p.discrete_symbols.clear();
  p.discrete_symbols.emplace_back("handempty");
  for (const auto& o : p.scene.objects) {
    p.discrete_symbols.push_back("holding(" + o.id + ")");
  }

  for (const auto& o : p.scene.objects) {
    for (const auto& r : p.scene.regions) {
      p.discrete_symbols.push_back("on(" + o.id + "," + r.id + ")");
    }
  }

  p.geo_symbols.clear();
  const int n_objects = static_cast<int>(p.scene.objects.size());
  const int n_regions = static_cast<int>(p.scene.regions.size());
  for (int o = 0; o < n_objects; ++o) {
    p.geo_symbols.push_back(
        {GeoPredKind::Near, o, -1, "near(" + p.scene.objects[static_cast<std::size_t>(o)].id + ")"});
  }

  for (int o = 0; o < n_objects; ++o) {
    for (int r = 0; r < n_regions; ++r) {
      p.geo_symbols.push_back({GeoPredKind::InRegion, o, r,
                               "in_region(" + p.scene.objects[static_cast<std::size_t>(o)].id + ","
                                   + p.scene.regions[static_cast<std::size_t>(r)].id + ")"});
    }
  }

  for (int r = 0; r < n_regions; ++r) {
    p.geo_symbols.push_back({GeoPredKind::RobotInRegion, -1, r,
                             "robot_in_region(" + p.scene.regions[static_cast<std::size_t>(r)].id
                                 + ")"});
  }

  p.schemas = {{"pick", ContinuousEffect::Attach}, {"place", ContinuousEffect::Detach}};

  const int handempty = p.discrete_index("handempty");
  const auto holding = [&](int o) {
    return p.discrete_index("holding(" + p.scene.objects[static_cast<std::size_t>(o)].id + ")");
  };
  const auto on = [&](int o, int r) {
    return p.discrete_index("on(" + p.scene.objects[static_cast<std::size_t>(o)].id + ","
                            + p.scene.regions[static_cast<std::size_t>(r)].id + ")");
  };

  p.actions.clear();
  for (int o = 0; o < n_objects; ++o) {
    for (int r = 0; r < n_regions; ++r) {
      GroundAction pick;
      pick.id = static_cast<int>(p.actions.size());
      pick.name = "pick(" + p.scene.objects[static_cast<std::size_t>(o)].id + ","
                  + p.scene.regions[static_cast<std::size_t>(r)].id + ")";
      pick.schema = 0;
      pick.object = o;
      pick.region = r;
      pick.discrete_pre = Formula::conjunction(
          {Formula::atom_of(on(o, r)), Formula::atom_of(handempty)});
      pick.geo_pre = {p.geo_index({GeoPredKind::Near, o, -1, ""})};
      pick.add = {holding(o)};
      pick.del = {on(o, r), handempty};
      pick.continuous = ContinuousEffect::Attach;
      p.actions.push_back(std::move(pick));
    }
  }

  for (int o = 0; o < n_objects; ++o) {
    for (int r = 0; r < n_regions; ++r) {
      GroundAction place;
      place.id = static_cast<int>(p.actions.size());
      place.name = "place(" + p.scene.objects[static_cast<std::size_t>(o)].id + ","
                   + p.scene.regions[static_cast<std::size_t>(r)].id + ")";
      place.schema = 1;
      place.object = o;
      place.region = r;
      place.discrete_pre = Formula::atom_of(holding(o));
      place.geo_pre = {p.geo_index({GeoPredKind::InRegion, o, r, ""})};
      place.add = {on(o, r), handempty};
      place.del = {holding(o)};
      place.continuous = ContinuousEffect::Detach;
      p.actions.push_back(std::move(place));
    }
  }
}

// Goal formulas are objects built from all/any/not; geometric atoms may only
// appear as top-level conjuncts.
auto parse_goal_formula(const Problem& p, const json& j, bool top, Goal& goal) -> Formula {
  if (j.is_string()) {
    const auto resolved = resolve_atom(p, j.get<std::string>());
    if (resolved.geometric) {
      if (!top) {
        throw ProblemFormatError("geometric atom '" + j.get<std::string>()
                                 + "' allowed only as a top-level goal conjunct");
      }

      goal.geometric.push_back(resolved.index);
      return Formula::truth();
    }

    return Formula::atom_of(resolved.index);
  }

  if (!j.is_object() || j.size() != 1) {
    throw ProblemFormatError("goal formula nodes must be atoms or one-key objects");
  }

  const auto it = j.begin();
  const std::string& key = it.key();
  const json& value = it.value();
  if (key == "all" || key == "any") {
    if (!value.is_array()) {
      throw ProblemFormatError("'" + key + "' expects an array");
    }

    std::vector<Formula> parts;
    for (const auto& child : value) {
      Formula f = parse_goal_formula(p, child, top && key == "all", goal);
      if (!(f == Formula::truth())) {
        parts.push_back(std::move(f));
      }
    }

    return key == "all" ? Formula::conjunction(std::move(parts))
                        : Formula::disjunction(std::move(parts));
  }

  if (key == "not") {
    return Formula::negation(parse_goal_formula(p, value, false, goal));
  }

  throw ProblemFormatError("unknown goal formula key '" + key + "'");
}

auto formula_to_json(const Problem& p, const Formula& f, const std::vector<int>& geo_members)
    -> json {
  switch (f.kind) {
    case Formula::Kind::Atom:
      return p.discrete_symbols[static_cast<std::size_t>(f.atom)];
    case Formula::Kind::Not:
      return json{{"not", formula_to_json(p, f.children.front(), {})}};
    case Formula::Kind::Or: {
      json parts = json::array();
      for (const auto& c : f.children) {
        parts.push_back(formula_to_json(p, c, {}));
      }

      return json{{"any", parts}};
    }
    case Formula::Kind::True:
    case Formula::Kind::And: {
      json parts = json::array();
      if (f.kind == Formula::Kind::And) {
        for (const auto& c : f.children) {
          parts.push_back(formula_to_json(p, c, {}));
        }
      }

      for (const int g : geo_members) {
        parts.push_back(p.geo_symbols[static_cast<std::size_t>(g)].name);
      }

      return json{{"all", parts}};
    }
  }

  return json{{"all", json::array()}};
}

}  // namespace

auto parse_problem(const std::string& json_text) -> Problem {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ProblemFormatError(std::string("malformed JSON: ") + e.what());
  }

  try {
    Problem p;
    p.name = j.value("name", "unnamed");

    const auto& world = require(j, "scene", "problem");
    p.scene.bounds = as_rect(require(world, "bounds", "scene"), "scene.bounds");

    const auto& robot = require(world, "robot", "scene");
    p.scene.robot_radius = require(robot, "radius", "robot").get<double>();
    p.scene.grasp_reach = require(robot, "grasp_reach", "robot").get<double>();
    const Vec2 start = as_vec2(require(robot, "start", "robot"), "robot.start");
    p.scene.robot_start = Config(2);
    p.scene.robot_start << start.x(), start.y();
    if (p.scene.robot_radius <= 0.0 || p.scene.grasp_reach <= 0.0) {
      throw ProblemFormatError("robot radius and grasp_reach must be positive");
    }

    for (const auto& jo : world.value("objects", json::array())) {
      SceneObject o;
      o.id = require(jo, "id", "object").get<std::string>();
      o.radius = require(jo, "radius", "object").get<double>();
      o.start_pose = as_vec2(require(jo, "start", "object"), "object.start");
      o.color = jo.value("color", "#888888");
      if (o.radius <= 0.0) {
        throw ProblemFormatError("object '" + o.id + "' radius must be positive");
      }

      if (!p.scene.bounds.contains(o.start_pose)) {
        throw ProblemFormatError("object '" + o.id + "' starts outside the workspace bounds");
      }

      if (p.scene.object_index(o.id)) {
        throw ProblemFormatError("duplicate object id '" + o.id + "'");
      }

      p.scene.objects.push_back(std::move(o));
    }

    for (const auto& jr : world.value("regions", json::array())) {
      SceneRegion r;
      r.id = require(jr, "id", "region").get<std::string>();
      r.rect = as_rect(require(jr, "rect", "region"), "region.rect");
      if (p.scene.region_index(r.id)) {
        throw ProblemFormatError("duplicate region id '" + r.id + "'");
      }

      p.scene.regions.push_back(std::move(r));
    }

    for (const auto& jo : world.value("obstacles", json::array())) {
      p.scene.obstacles.push_back(as_rect(jo, "obstacle"));
    }

    // Optional registry declarations; the libraries themselves are fixed, so
    // the keys only reject files written against predicates or schemas this
    // planner does not implement.
    for (const auto& name : j.value("predicates", json::array())) {
      const std::string s = name.get<std::string>();
      if (s != "near" && s != "in_region" && s != "robot_in_region") {
        throw ProblemFormatError("unknown geometric predicate '" + s + "'");
      }
    }

    for (const auto& name : j.value("actions", json::array())) {
      const std::string s = name.get<std::string>();
      if (s != "pick" && s != "place") {
        throw ProblemFormatError("unknown action schema '" + s + "'");
      }
    }

    ground(p);

    p.init_discrete = DiscreteState(p.discrete_symbols.size());
    for (const auto& atom : require(j, "init", "problem")) {
      const std::string raw = atom.get<std::string>();
      const auto resolved = resolve_atom(p, raw);
      if (resolved.geometric) {
        throw ProblemFormatError("init atom '" + raw
                                 + "' is geometric; initial geometry is given by the world");
      }

      p.init_names.push_back(raw);
      p.init_discrete.set(resolved.index, true);
    }

    p.goal.discrete = parse_goal_formula(p, require(j, "goal", "problem"), true, p.goal);
    return p;
  } catch (const json::exception& e) {
    throw ProblemFormatError(std::string("malformed problem: ") + e.what());
  }
}

auto load_problem(const std::filesystem::path& path) -> Problem {
  std::ifstream in(path);
  if (!in) {
    throw ProblemFormatError("cannot open problem file: " + path.string());
  }

  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str());
}

auto serialize_problem(const Problem& problem) -> std::string {
  json world;
  world["bounds"] = {problem.scene.bounds.lo.x(), problem.scene.bounds.lo.y(),
                     problem.scene.bounds.hi.x(), problem.scene.bounds.hi.y()};
  world["robot"] = {{"radius", problem.scene.robot_radius},
                    {"grasp_reach", problem.scene.grasp_reach},
                    {"start", {problem.scene.robot_start[0], problem.scene.robot_start[1]}}};

  world["objects"] = json::array();
  for (const auto& o : problem.scene.objects) {
    world["objects"].push_back({{"id", o.id},
                                {"radius", o.radius},
                                {"start", {o.start_pose.x(), o.start_pose.y()}},
                                {"color", o.color}});
  }

  world["regions"] = json::array();
  for (const auto& r : problem.scene.regions) {
    world["regions"].push_back(
        {{"id", r.id}, {"rect", {r.rect.lo.x(), r.rect.lo.y(), r.rect.hi.x(), r.rect.hi.y()}}});
  }

  world["obstacles"] = json::array();
  for (const auto& o : problem.scene.obstacles) {
    world["obstacles"].push_back({o.lo.x(), o.lo.y(), o.hi.x(), o.hi.y()});
  }

  json j;
  j["name"] = problem.name;
  j["scene"] = std::move(world);
  j["predicates"] = {"near", "in_region", "robot_in_region"};
  j["actions"] = {"pick", "place"};
  j["init"] = problem.init_names;
  j["goal"] = formula_to_json(problem, problem.goal.discrete, problem.goal.geometric);
  return j.dump(2) + "\n";
}

auto save_problem(const Problem& problem, const std::filesystem::path& path) -> void {
  std::ofstream out(path);
  if (!out) {
    throw ProblemFormatError("cannot write problem file: " + path.string());
  }

  out << serialize_problem(problem);
}

}  // namespace tmitstar
