#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <doctest.h>

#include "common.hpp"
#include "fairdiv/coreset.hpp"
#include "fairdiv/gmm.hpp"

using namespace fairdiv;
using namespace testutil;

namespace {

std::vector<std::size_t> all_indices(const ColoredDataset& ds) {
  std::vector<std::size_t> idx(ds.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return idx;
}

}  // namespace

TEST_CASE("seeds claim their own cluster members closest-first") {
  const auto ds = line_dataset({0, 4, 10}, {0, 0, 0}, 1);
  const auto cs = build_coreset_sum_pairwise(ds, all_indices(ds), 2);
  // Seeds {0, 10}; point 4 is nearer seed 0, so it joins that cluster.
  CHECK(cs == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("a unit target still forces two seeds") {
  const auto ds = line_dataset({0, 10}, {0, 0}, 1);
  const auto cs = build_coreset_sum_pairwise(ds, all_indices(ds), 1);
  CHECK(cs == std::vector<std::size_t>{0, 1});
}

TEST_CASE("a group no larger than the target survives whole") {
  const auto ds = line_dataset({3, 1, 4, 1.5, 9}, {0, 0, 0, 0, 0}, 1);
  const auto cs = build_coreset_sum_pairwise(ds, all_indices(ds), 5);
  CHECK(cs == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("zero target yields an empty core-set and an empty group is an error") {
  const auto ds = line_dataset({0, 1}, {0, 0}, 1);
  CHECK(build_coreset_sum_pairwise(ds, all_indices(ds), 0).empty());
  CHECK_THROWS_AS(build_coreset_sum_pairwise(ds, {}, 2), InputError);
}

TEST_CASE("output size respects the quadratic bound and stays inside the group") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + pick_index(rng, 40);
    const auto ds = make_dataset({n}, 3, MetricKind::euclidean, rng);
    const std::size_t k = 1 + pick_index(rng, 5);
    const auto cs = build_coreset_sum_pairwise(ds, all_indices(ds), k);
    CHECK(cs.size() <= std::max<std::size_t>(k, 2) * (k + 1));
    CHECK(cs.size() <= n);
    CHECK(std::is_sorted(cs.begin(), cs.end()));
    CHECK(std::adjacent_find(cs.begin(), cs.end()) == cs.end());
    for (std::size_t idx : cs) CHECK(idx < n);
  }
}

TEST_CASE("rebuilding on the core-set returns the core-set unchanged") {
  std::mt19937_64 rng(32);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t n = 3 + pick_index(rng, 30);
    const auto ds = make_dataset({n}, 2, MetricKind::euclidean, rng);
    const std::size_t k = 1 + pick_index(rng, 4);
    const auto first = build_coreset_sum_pairwise(ds, all_indices(ds), k);

    // Rebuild on a dataset holding only the surviving points. Ids carry over,
    // so equality of id sets is the idempotence claim.
    std::vector<Point> kept;
    for (std::size_t idx : first) kept.push_back(ds.point(idx));
    const ColoredDataset sub(kept, 1, ds.dim(), ds.metric());
    const auto second = build_coreset_sum_pairwise(sub, all_indices(sub), k);

    std::vector<PointId> first_ids, second_ids;
    for (std::size_t idx : first) first_ids.push_back(ds.point(idx).id);
    for (std::size_t idx : second) second_ids.push_back(sub.point(idx).id);
    CHECK(first_ids == second_ids);
  }
}

TEST_CASE("every small optimum matches injectively into the core-set within twice the radius") {
  std::mt19937_64 rng(33);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 3 + pick_index(rng, 10);  // n <= 12
    const auto ds = make_dataset({n}, 2, MetricKind::euclidean, rng);
    const std::size_t k = 1 + pick_index(rng, 3);
    const auto cs = build_coreset_sum_pairwise(ds, all_indices(ds), k);

    const auto run = gmm(ds, all_indices(ds), std::max<std::size_t>(k, 2));
    const double cap = 2.0 * run.radii[std::min(std::max<std::size_t>(k, 2), run.size()) - 1];

    for_each_subset(n, k, [&](const std::vector<std::size_t>& subset) {
      std::vector<std::vector<std::size_t>> adj(subset.size());
      for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = 0; b < cs.size(); ++b) {
          if (dist(ds.point(subset[a]), ds.point(cs[b]), ds.metric()) <= cap) {
            adj[a].push_back(b);
          }
        }
      }
      CHECK(max_bipartite_matching(adj, cs.size()) == subset.size());
    });
  }
}

TEST_CASE("nearest-seed ties go to the earlier pick") {
  // Seeds come out as {0, 8} (positions 0 and 1); x=4 is equidistant and must
  // join seed 0's cluster, leaving seed 8 able to claim only x=7.
  const auto ds = line_dataset({0, 8, 4, 7}, {0, 0, 0, 0}, 1);
  const auto cs = build_coreset_sum_pairwise(ds, all_indices(ds), 1);
  CHECK(cs == std::vector<std::size_t>{0, 1, 2, 3});
}
