#pragma once

// Shared test plumbing: seeded instance generators (raw mt19937_64 bits only,
// so sequences match across standard libraries), combinatorics helpers, and
// the independent oracles the behavioral tests compare against.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "fairdiv/core.hpp"

namespace testutil {

using fairdiv::ColoredDataset;
using fairdiv::MetricKind;
using fairdiv::Point;
using fairdiv::PointId;

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// rng() % n is biased for general n, but every n here is tiny relative to
// 2^64; the bias is unobservable and the draw is portable.
inline std::size_t pick_index(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

// Random dataset with the given per-color group sizes. Ids are sequential in
// color blocks. positive=true keeps every coordinate strictly positive, which
// angular-metric instances need (zero vectors are rejected by the metric).
inline ColoredDataset make_dataset(const std::vector<std::size_t>& per_color, std::size_t dim,
                                   MetricKind metric, std::mt19937_64& rng, double box = 10.0,
                                   bool positive = false) {
  std::vector<Point> points;
  PointId next_id = 0;
  for (std::size_t c = 0; c < per_color.size(); ++c) {
    for (std::size_t i = 0; i < per_color[c]; ++i) {
      Point p;
      p.id = next_id++;
      p.color = static_cast<int>(c);
      p.vec.resize(dim);
      for (auto& x : p.vec) {
        x = positive ? uniform(rng, 0.25, box) : uniform(rng, -box, box);
      }
      points.push_back(std::move(p));
    }
  }
  return ColoredDataset(std::move(points), static_cast<int>(per_color.size()), dim, metric);
}

// 1D dataset from explicit coordinates and colors; ids follow input order.
inline ColoredDataset line_dataset(const std::vector<double>& xs, const std::vector<int>& colors,
                                   int m) {
  std::vector<Point> points;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    points.push_back(Point{static_cast<PointId>(i), {xs[i]}, colors[i]});
  }
  return ColoredDataset(std::move(points), m, 1, MetricKind::euclidean);
}

inline std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Enumerates every size-k index subset of [0, n) in lexicographic order.
template <typename Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(const_cast<const std::vector<std::size_t>&>(idx));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline double min_pairwise_of(const ColoredDataset& ds, const std::vector<std::size_t>& idx) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      best = std::min(best, dist(ds.point(idx[a]), ds.point(idx[b]), ds.metric()));
    }
  }
  return best;
}

// Maximum bipartite matching (Kuhn's augmenting paths). adj[l] lists the
// right-side vertices usable by left vertex l.
inline std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adj,
                                          std::size_t n_right) {
  std::vector<std::size_t> match_right(n_right, SIZE_MAX);
  std::vector<char> used;

  auto try_kuhn = [&](auto&& self, std::size_t l) -> bool {
    for (std::size_t r : adj[l]) {
      if (used[r]) continue;
      used[r] = 1;
      if (match_right[r] == SIZE_MAX || self(self, match_right[r])) {
        match_right[r] = l;
        return true;
      }
    }
    return false;
  };

  std::size_t matched = 0;
  for (std::size_t l = 0; l < adj.size(); ++l) {
    used.assign(n_right, 0);
    if (try_kuhn(try_kuhn, l)) ++matched;
  }
  return matched;
}

// Independent ball-subset reference: enumerates all 2^t subsets by bitmask and
// keeps the best by (size desc, ascending-position sequence lex asc). The
// production search walks an include-first DFS instead, so agreement is
// evidence, not tautology.
struct BallOracleInput {
  const ColoredDataset& ds;
  const std::vector<std::size_t>& centers;  // dataset indices
  double radius;
  int special;
  const std::vector<std::size_t>& k_per_color;
  std::size_t max_size;
};

inline std::vector<std::size_t> ball_subset_oracle(const BallOracleInput& in) {
  const std::size_t t = in.centers.size();
  const std::size_t m = in.k_per_color.size();

  // covered[p] = bitmask of balls containing point p (closed balls).
  std::vector<std::uint64_t> covered(in.ds.size(), 0);
  for (std::size_t p = 0; p < in.ds.size(); ++p) {
    for (std::size_t b = 0; b < t; ++b) {
      if (dist(in.ds.point(p), in.ds.point(in.centers[b]), in.ds.metric()) <= in.radius) {
        covered[p] |= std::uint64_t{1} << b;
      }
    }
  }

  std::vector<std::size_t> best;
  bool have_best = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size > in.max_size) continue;
    std::vector<std::size_t> survivors(m, 0);
    for (std::size_t p = 0; p < in.ds.size(); ++p) {
      if ((covered[p] & mask) == 0) {
        survivors[static_cast<std::size_t>(in.ds.point(p).color)]++;
      }
    }
    bool ok = true;
    for (std::size_t c = 0; c < m && ok; ++c) {
      const std::size_t need =
          c == static_cast<std::size_t>(in.special)
              ? in.k_per_color[c] - std::min(in.k_per_color[c], size)
              : in.k_per_color[c];
      ok = survivors[c] >= need;
    }
    if (!ok) continue;
    std::vector<std::size_t> positions;
    for (std::size_t b = 0; b < t; ++b) {
      if (mask & (std::uint64_t{1} << b)) positions.push_back(b);
    }
    if (!have_best || positions.size() > best.size() ||
        (positions.size() == best.size() && positions < best)) {
      best = std::move(positions);
      have_best = true;
    }
  }
  return best;
}

}  // namespace testutil
