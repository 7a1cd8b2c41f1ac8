#include "tmitstar/instance_gen.hpp"

#include "tmitstar/problem_io.hpp"
#include "tmitstar/rng.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tmitstar {

using nlohmann::json;

namespace {

constexpr const char* kPalette[] = {"#0077bb", "#009988", "#ee7733",
                                    "#33bbee", "#ee3377", "#bbbbbb"};

auto base_world(double rx, double ry) -> json {
  json world;
  world["bounds"] = {0.0, 0.0, 10.0, 10.0};
  world["robot"] = {{"radius", 0.3}, {"grasp_reach", 0.5}, {"start", {rx, ry}}};
  world["objects"] = json::array();
  world["regions"] = json::array();
  world["obstacles"] = json::array();
  return world;
}

auto add_object(json& world, const std::string& id, double radius, const Vec2& pose,
                const std::string& color) -> void {
  world["objects"].push_back(
      {{"id", id}, {"radius", radius}, {"start", {pose.x(), pose.y()}}, {"color", color}});
}

auto add_region(json& world, const std::string& id, double x0, double y0, double x1, double y1)
    -> void {
  world["regions"].push_back({{"id", id}, {"rect", {x0, y0, x1, y1}}});
}

// A target on an open table, ringed by movable occluders. Each occluder
// shadows roughly a third of the grasp directions, so the ring closes as the
// count grows and the planner must start relocating occluders.
auto make_clutter(int n_objects, std::uint64_t seed) -> json {
  auto rng = RngStreams{seed}.stream("instance");
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  json world = base_world(1.2, 1.2);
  add_region(world, "table", 2.5, 2.5, 7.5, 7.5);
  add_region(world, "bin", 8.0, 8.0, 9.7, 9.7);

  const Vec2 target{5.0 + 0.6 * (unit(rng) - 0.5), 5.0 + 0.6 * (unit(rng) - 0.5)};
  const double target_radius = 0.17 + 0.02 * unit(rng);
  add_object(world, "obj0", target_radius, target, "#cc3311");

  const int occluders = n_objects - 1;
  const double ring = 0.42;
  const double phase = 2.0 * std::numbers::pi * unit(rng);
  for (int i = 0; i < occluders; ++i) {
    const double angle =
        phase + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(occluders);
    const Vec2 pose = target + ring * Vec2{std::cos(angle), std::sin(angle)}
                      + Vec2{jitter(rng), jitter(rng)};
    add_object(world, "obj" + std::to_string(i + 1), 0.15 + 0.02 * unit(rng), pose,
               kPalette[i % 6]);
  }

  json j;
  j["scene"] = std::move(world);
  j["init"] = json::array({"handempty"});
  for (int i = 0; i < n_objects; ++i) {
    j["init"].push_back("on(obj" + std::to_string(i) + ",table)");
  }

  j["goal"] = {{"all", {"on(obj0,bin)"}}};
  return j;
}

// Two targets, one at the back of each of two walled pockets; the remaining
// objects are distractors that first seal the grasp rings, then narrow the
// pocket mouths. Both targets must reach the drop zone, so every trial
// rearranges at least two objects and the distractors force detours or
// relocations on top of that.
auto make_shelf(int n_objects, std::uint64_t seed) -> json {
  auto rng = RngStreams{seed}.stream("instance");
  std::uniform_real_distribution<double> jitter(-0.01, 0.01);

  json world = base_world(5.0, 1.5);
  // Pocket walls: three verticals and two backs form side-by-side corridors
  // opening downward.
  world["obstacles"].push_back({2.2, 7.2, 2.5, 9.0});
  world["obstacles"].push_back({4.5, 7.2, 5.5, 9.0});
  world["obstacles"].push_back({7.5, 7.2, 7.8, 9.0});
  world["obstacles"].push_back({2.2, 9.0, 7.8, 9.3});
  add_region(world, "shelf_a", 2.5, 7.2, 4.5, 9.0);
  add_region(world, "shelf_b", 5.5, 7.2, 7.5, 9.0);
  add_region(world, "drop", 1.0, 1.0, 2.8, 2.8);
  add_region(world, "floor", 0.6, 0.6, 9.4, 6.4);

  const Vec2 targets[] = {{3.5 + jitter(rng), 8.65}, {6.5 + jitter(rng), 8.65}};
  add_object(world, "obj0", 0.18, targets[0], "#cc3311");
  add_object(world, "obj1", 0.18, targets[1], "#117733");

  // Mouth distractors seal one side of each entrance so the robot has to
  // thread the other; inner distractors then occlude the wall-side grasps.
  // NOTE: keep them out of the grasp annulus, or carrying anything out of a
  // pocket becomes impossible for most grasp offsets.
  const Vec2 spots[] = {{3.2, 7.55}, {6.8, 7.55}, {2.88, 8.45}, {7.12, 8.45}};
  const int n_distractors = n_objects - 2;
  for (int i = 0; i < n_distractors; ++i) {
    add_object(world, "obj" + std::to_string(i + 2),
               0.16, spots[i] + Vec2{jitter(rng), jitter(rng)}, kPalette[i % 6]);
  }

  json j;
  j["scene"] = std::move(world);
  j["init"] = json::array({"handempty", "on(obj0,shelf_a)", "on(obj1,shelf_b)"});
  for (int i = 0; i < n_distractors; ++i) {
    j["init"].push_back("on(obj" + std::to_string(i + 2) + ","
                        + (i % 2 == 0 ? "shelf_a" : "shelf_b") + ")");
  }

  j["goal"] = {{"all", {"on(obj0,drop)", "on(obj1,drop)"}}};
  return j;
}

}  // namespace

auto generate_instance(InstanceKind kind, int n_objects, std::uint64_t seed) -> Problem {
  json j;
  switch (kind) {
    case InstanceKind::Clutter:
      if (n_objects < 1) {
        throw std::invalid_argument("clutter instances need at least the target object");
      }

      j = make_clutter(n_objects, seed);
      break;
    case InstanceKind::Shelf:
      if (n_objects < 2 || n_objects > 6) {
        throw std::invalid_argument(
            "shelf instances hold the two targets plus zero to four distractors");
      }

      j = make_shelf(n_objects, seed);
      break;
  }

  j["name"] = instance_kind_name(kind) + "_n" + std::to_string(n_objects) + "_s"
              + std::to_string(seed);
  Problem p = parse_problem(j.dump());
  if (!is_valid(p.initial_state(), p.scene)) {
    throw std::logic_error("generated instance has an invalid initial state");
  }

  return p;
}

auto instance_kind_name(InstanceKind kind) -> std::string {
  return kind == InstanceKind::Clutter ? "clutter" : "shelf";
}

}  // namespace tmitstar
