#include "fairdiv/coreset.hpp"

#include <algorithm>
#include <limits>

#include "fairdiv/gmm.hpp"

namespace fairdiv {

std::vector<std::size_t> build_coreset_sum_pairwise(const ColoredDataset& ds,
                                                    std::span<const std::size_t> group,
                                                    std::size_t k_i) {
  if (group.empty()) throw InputError("sum_pairwise core-set: empty group");
  if (k_i == 0) return {};

  const MetricKind metric = ds.metric();
  const GmmRun run = gmm(ds, group, std::max<std::size_t>(k_i, 2));
  std::vector<std::size_t> seeds(run.size());
  for (std::size_t s = 0; s < run.size(); ++s) seeds[s] = ds.index_of(run.picks[s]);

  // Nearest seed per group point, ties to the earlier pick.
  std::vector<std::size_t> owner(group.size());
  std::vector<double> owner_dist(group.size());
  for (std::size_t i = 0; i < group.size(); ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      const double d = dist(ds.point(group[i]), ds.point(seeds[s]), metric);
      if (d < best_d) {
        best_d = d;
        best = s;
      }
    }
    owner[i] = best;
    owner_dist[i] = best_d;
  }

  std::vector<char> taken(group.size(), 0);
  for (std::size_t i = 0; i < group.size(); ++i) {
    if (std::find(seeds.begin(), seeds.end(), group[i]) != seeds.end()) taken[i] = 1;
  }

  // Each seed claims its k_i nearest unclaimed cluster members, closest first
  // (distance ties to the lower group position).
  std::vector<std::size_t> result(seeds.begin(), seeds.end());
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < group.size(); ++i) {
      if (!taken[i] && owner[i] == s) members.push_back(i);
    }
    std::stable_sort(members.begin(), members.end(),
                     [&](std::size_t a, std::size_t b) { return owner_dist[a] < owner_dist[b]; });
    const std::size_t take = std::min(k_i, members.size());
    for (std::size_t j = 0; j < take; ++j) {
      taken[members[j]] = 1;
      result.push_back(group[members[j]]);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::size_t> build_coreset_sum_nn(const ColoredDataset& ds,
                                              std::span<const std::size_t> group,
                                              std::size_t k) {
  if (group.empty() || k == 0) return {};
  std::vector<std::size_t> result;
  for (const GmmRun& run : gmm_rounds(ds, group, k, k + 1)) {
    for (PointId id : run.picks) result.push_back(ds.index_of(id));
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<std::size_t> build_coreset_min_pairwise(const ColoredDataset& ds,
                                                    std::span<const std::size_t> group,
                                                    std::size_t k_i) {
  if (group.empty() || k_i == 0) return {};
  const GmmRun run = gmm(ds, group, k_i);
  std::vector<std::size_t> result(run.size());
  for (std::size_t s = 0; s < run.size(); ++s) result[s] = ds.index_of(run.picks[s]);
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace fairdiv
