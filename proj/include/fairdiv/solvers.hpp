#pragma once

#include <cstdint>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

struct OracleResult {
  Selection selection;
  double value = 0.0;
};

// Exact fair-diversity optimum by enumerating every per-color combination.
// Among equal-value optima the one whose sorted id sequence is
// lexicographically smallest wins. Refuses with BudgetError when the
// enumeration size (product of per-color binomials) exceeds the budget;
// requires a feasible quota and a total of at least two picks.
OracleResult brute_force_fdm(const ColoredDataset& ds, const Quota& q, DiversityMeasure measure,
                             std::uint64_t budget = 10'000'000);

// Local search for sum-pairwise fair diversity: starts from per-color greedy
// farthest-point picks, then applies same-color single swaps while one
// improves the objective by a factor greater than 1 + eps/k. First-improvement
// rule over ascending ids keeps runs deterministic.
Selection local_search_sum_pairwise(const ColoredDataset& ds, const Quota& q, double eps = 0.05);

// Fair greedy for min-pairwise diversity: repeatedly picks, among colors with
// remaining quota, the point farthest from the current selection (lowest
// dataset index first and on ties).
Selection fair_greedy_min_pairwise(const ColoredDataset& ds, const Quota& q);

// Unconstrained diversity maximization, solved by merging all colors into one
// and dispatching to the measure's solver: greedy farthest-point for
// min-pairwise, local search for sum-pairwise, the ball solver for sum-NN.
// k < 2 degenerates to the lowest-id k points.
Selection solve_dm(const ColoredDataset& ds, std::size_t k, DiversityMeasure measure);

}  // namespace fairdiv
