#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// Core-set of one color group for the sum-of-pairwise-distances objective.
// Seeds the group with a greedy farthest-point run of max(k_i, 2) picks, then
// lets every seed claim up to k_i extra points from its own cluster (points
// whose nearest seed it is), closest first. Returns dataset indices in
// insertion order; size <= max(k_i, 2) * (k_i + 1). k_i = 0 yields an empty
// core-set; an empty group is an input error.
std::vector<std::size_t> build_coreset_sum_pairwise(const ColoredDataset& ds,
                                                    std::span<const std::size_t> group,
                                                    std::size_t k_i);

// Core-set of one color group for the sum-of-nearest-neighbor objective: the
// union of k greedy farthest-point rounds of k+1 picks each, sampled without
// replacement. k is the total selection size, not the per-color target.
// Returns dataset indices in insertion order; size <= min(|group|, k*(k+1)).
// An empty group yields an empty core-set.
std::vector<std::size_t> build_coreset_sum_nn(const ColoredDataset& ds,
                                              std::span<const std::size_t> group,
                                              std::size_t k);

// Core-set of one color group for the min-pairwise objective: the k_i greedy
// farthest-point picks themselves. Size <= min(|group|, k_i).
std::vector<std::size_t> build_coreset_min_pairwise(const ColoredDataset& ds,
                                                    std::span<const std::size_t> group,
                                                    std::size_t k_i);

}  // namespace fairdiv
