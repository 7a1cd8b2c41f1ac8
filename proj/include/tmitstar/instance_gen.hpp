#pragma once

#include "tmitstar/domain.hpp"

#include <cstdint>
#include <string>

namespace tmitstar {

enum class InstanceKind { Clutter, Shelf };

// Produces a solvable benchmark instance with n_objects movable objects.
//
// Clutter: a target object on an open table, ringed by n - 1 movable
// occluders that progressively close off the grasp approach; the goal is to
// deliver the target to a bin. Requires n >= 1.
//
// Shelf: two targets, one at the back of each of two walled pockets, with
// n - 2 distractors on the grasp rings and pocket mouths; the goal is to
// deliver both targets to a drop zone. Requires 2 <= n <= 6.
//
// Throws std::invalid_argument when the count is out of range for the kind.
[[nodiscard]] auto generate_instance(InstanceKind kind, int n_objects, std::uint64_t seed)
    -> Problem;

[[nodiscard]] auto instance_kind_name(InstanceKind kind) -> std::string;

}  // namespace tmitstar
