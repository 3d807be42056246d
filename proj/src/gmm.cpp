#include "fairdiv/gmm.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace fairdiv {

GmmRun gmm(const ColoredDataset& ds, std::span<const std::size_t> pool, std::size_t k,
           std::size_t seed_pos) {
  if (pool.empty()) throw InputError("gmm: empty pool");
  if (seed_pos >= pool.size()) throw InputError("gmm: seed position out of range");

  GmmRun run;
  if (k == 0) return run;

  const MetricKind metric = ds.metric();
  const std::size_t target = std::min(k, pool.size());
  run.picks.reserve(target);
  run.radii.reserve(target);

  run.picks.push_back(ds.point(pool[seed_pos]).id);
  run.radii.push_back(std::numeric_limits<double>::infinity());

  // to_set[i] = dist(pool[i], picks so far); picked entries are skipped.
  std::vector<double> to_set(pool.size());
  std::vector<char> picked(pool.size(), 0);
  picked[seed_pos] = 1;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (picked[i]) continue;
    to_set[i] = dist(ds.point(pool[i]), ds.point(pool[seed_pos]), metric);
  }

  while (run.picks.size() < target) {
    std::size_t best = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (picked[i]) continue;
      if (best == pool.size() || to_set[i] > to_set[best]) best = i;
    }
    // The new min pairwise distance is exactly the chosen max-min value.
    run.picks.push_back(ds.point(pool[best]).id);
    run.radii.push_back(to_set[best]);
    picked[best] = 1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (picked[i]) continue;
      to_set[i] = std::min(to_set[i], dist(ds.point(pool[i]), ds.point(pool[best]), metric));
    }
  }
  return run;
}

std::vector<GmmRun> gmm_rounds(const ColoredDataset& ds, std::span<const std::size_t> pool,
                               std::size_t rounds, std::size_t per_round) {
  std::vector<GmmRun> out;
  std::vector<std::size_t> remaining(pool.begin(), pool.end());
  for (std::size_t r = 0; r < rounds && !remaining.empty(); ++r) {
    GmmRun run = gmm(ds, remaining, per_round, 0);
    if (run.picks.empty()) break;
    out.push_back(run);
    std::unordered_set<PointId> taken(run.picks.begin(), run.picks.end());
    std::erase_if(remaining, [&](std::size_t idx) { return taken.count(ds.point(idx).id) != 0; });
  }
  return out;
}

}  // namespace fairdiv
