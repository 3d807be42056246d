#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// Trace of one greedy farthest-point run: picks in pick order, and radii[i] =
// the minimum pairwise distance among the first i+1 picks (radii[0] = +inf).
struct GmmRun {
  std::vector<PointId> picks;
  std::vector<double> radii;

  std::size_t size() const { return picks.size(); }
};

// Greedy farthest-point selection over pool (dataset indices, insertion
// order). Starts from pool[seed_pos], then repeatedly takes the point farthest
// from the current picks, breaking ties by lowest pool position. Returns
// min(k, pool size) picks. Pool must be non-empty and seed_pos valid.
GmmRun gmm(const ColoredDataset& ds, std::span<const std::size_t> pool, std::size_t k,
           std::size_t seed_pos = 0);

// Runs gmm up to `rounds` times, removing each round's picks from the pool and
// reseeding at the lowest surviving position. Stops early once the pool is
// exhausted; an empty pool yields no rounds.
std::vector<GmmRun> gmm_rounds(const ColoredDataset& ds, std::span<const std::size_t> pool,
                               std::size_t rounds, std::size_t per_round);

}  // namespace fairdiv
