#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// Disjoint closed balls of one shared radius around stored dataset indices
// (kept in pick order). Built by the sum-NN solver from a farthest-point run.
struct BallSet {
  std::vector<std::size_t> centers;
  double radius = 0.0;
};

// Checks the disjointness invariant: pairwise center distances >= 2 * radius.
// Violations are construction bugs, not bad input.
void validate_ball_set(const ColoredDataset& ds, const BallSet& b);

// Largest iteration t >= j whose radius still satisfies r_t >= r_j / 2, over
// 1-based iteration numbers (radii[0] = r_1). A shorter run caps t at the last
// available index. Requires 2 <= j <= |radii|.
std::size_t compute_t(std::span<const double> radii, std::size_t j);

inline constexpr std::uint64_t kDefaultSubsetBudget = 10'000'000;

// Maximum-cardinality B' among subsets of at most max_size balls such that
// after deleting the points covered by B', every color l != special still has
// k_l survivors and color `special` has k_special - |B'|. Returns positions
// into b.centers, ascending; among equal-size optima the lexicographically
// first by center order wins. Refuses with BudgetError when the subset count
// sum C(|B|, z), z <= max_size, exceeds subset_budget.
std::vector<std::size_t> select_balls_exhaustive(const ColoredDataset& ds, const BallSet& b,
                                                 int special, const Quota& q,
                                                 std::size_t max_size,
                                                 std::uint64_t subset_budget = kDefaultSubsetBudget);

// O(m)-approximate ball selection: the better of the best subset of size <= 2
// and an iterative halving pass that keeps the half of the balls whose
// discarded complement satisfies at least as many outstanding color demands,
// trimmed to k_special balls by dropping the latest centers. Returns positions
// into b.centers, ascending.
std::vector<std::size_t> select_balls_halving(const ColoredDataset& ds, const BallSet& b,
                                              int special, const Quota& q);

enum class BallApproach { exhaustive, halving };

BallApproach parse_approach(const std::string& name);
std::string to_string(BallApproach a);

struct SumNnOptions {
  BallApproach approach = BallApproach::exhaustive;
  std::uint64_t subset_budget = kDefaultSubsetBudget;
};

// Fair diversity maximization under the sum-of-nearest-neighbor measure.
// Starts from the lowest-id valid selection, then for every color i and every
// farthest-point iteration j builds disjoint balls around the first t(j) picks
// and keeps the centers of a feasible ball subset plus lowest-id fill points
// outside the chosen balls, retaining the best-scoring candidate. Requires
// |group(l)| >= k_l for every color. When the exhaustive approach exceeds its
// subset budget the solver warns once per color and falls back to halving.
Selection solve_fdm_sum_nn(const ColoredDataset& ds, const Quota& q,
                           const SumNnOptions& opts = {});

}  // namespace fairdiv
