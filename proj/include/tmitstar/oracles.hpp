#pragma once

#include "tmitstar/domain.hpp"

#include <limits>
#include <string>

namespace tmitstar {

enum class OracleStatus { Solved, Unsolvable, CapExceeded };

struct BfsOracleResult {
  OracleStatus status = OracleStatus::Unsolvable;
  int makespan = -1;  // minimum number of actions when Solved
  long states_explored = 0;
};

// Exhaustive breadth-first search over the discrete transition system.
// Refuses (rather than answering wrongly) once more than `state_cap`
// distinct assignments have been expanded.
[[nodiscard]] auto discrete_bfs_oracle(const DiscreteDomain& domain, const DiscreteState& init,
                                       const Formula& goal, long state_cap = 1'000'000)
    -> BfsOracleResult;

struct OracleBracket {
  OracleStatus status = OracleStatus::Unsolvable;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::string reason;  // explanation when not Solved
};

// Brute-force cost bracket for a problem, independent of the planner.
//
// `upper` is the cost of an actually feasible plan found by search over a
// robot-position lattice at `resolution`: every lattice edge is checked
// exactly as a swept capsule, so the reported plan is feasible in the
// continuous world and the bound converges from above as the resolution
// shrinks. `lower` is a geometric displacement bound (robot approach plus
// object travel), valid regardless of obstacles.
//
// Supported goals: already satisfied at start; robot-in-region; placements
// of one object; placements of two objects (bounded by the better of the two
// sequential orders, which may exceed the best interleaved plan). Anything
// else, or exceeding `node_cap` lattice expansions, is refused with a
// reason. A goal the lattice cannot realize at this resolution reports
// Unsolvable with a reason naming the resolution.
[[nodiscard]] auto grid_tmp_oracle(const Problem& problem, double resolution,
                                   long node_cap = 4'000'000) -> OracleBracket;

}  // namespace tmitstar
