#pragma once

#include "tmitstar/domain.hpp"
#include "tmitstar/geometry.hpp"
#include "tmitstar/hybrid_state.hpp"
#include "tmitstar/scene.hpp"

#include <vector>

namespace tmitstar {

// Distance-to-satisfaction of a single geometric predicate at `q`: zero
// exactly when the predicate holds, positive and differentiable (away from
// kinks) otherwise.
[[nodiscard]] auto geo_distance(const GeoSymbol& sym, const HybridState& q, const Scene& scene)
    -> double;

// Gradient of geo_distance with respect to the robot configuration. Poses of
// unheld objects are constants, so predicates that do not involve the robot
// (directly or through the attachment) have zero gradient.
[[nodiscard]] auto geo_gradient(const GeoSymbol& sym, const HybridState& q, const Scene& scene)
    -> Config;

// Boolean satisfaction decided from the scene geometry alone, without going
// through the distance function.
[[nodiscard]] auto geo_holds(const GeoSymbol& sym, const HybridState& q, const Scene& scene)
    -> bool;

// Distance of a conjunction: sum of member distances (zero iff all hold).
[[nodiscard]] auto conjunction_distance(const Problem& problem, const std::vector<int>& members,
                                        const HybridState& q) -> double;

[[nodiscard]] auto conjunction_gradient(const Problem& problem, const std::vector<int>& members,
                                        const HybridState& q) -> Config;

enum class ProjectionStatus { Success, NonConvergence, LocalMinimum, InvalidState };

struct ProjectionResult {
  ProjectionStatus status = ProjectionStatus::NonConvergence;
  HybridState state;
  int iterations = 0;
  double distance = 0.0;
};

struct ProjectionOptions {
  int max_iterations = 100;
  double tolerance = kSatisfactionTol;
  double armijo_c = 1e-4;
  int max_backtracks = 40;
};

// Projects `seed` onto the zero set of the conjunction's distance function by
// gradient descent with Armijo backtracking. Only the robot configuration
// moves; discrete values and unheld object poses are untouched. A projection
// succeeds only if the final state is valid, satisfies the conjunction within
// tolerance, and was reached without stalling.
[[nodiscard]] auto project_to_manifold(const Problem& problem, const std::vector<int>& members,
                                       const HybridState& seed,
                                       const ProjectionOptions& opts = {}) -> ProjectionResult;

// Compares the analytic gradient of one predicate against central finite
// differences. Requires a state off the zero set (the distance function has a
// kink at distance zero); throws std::invalid_argument otherwise.
[[nodiscard]] auto check_gradient(const GeoSymbol& sym, const HybridState& q, const Scene& scene,
                                  double step = 1e-6, double rel_tol = 1e-4) -> bool;

}  // namespace tmitstar
