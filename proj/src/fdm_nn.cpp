#include "fairdiv/fdm_nn.hpp"

#include <algorithm>
#include <iostream>
#include <limits>

#include "fairdiv/gmm.hpp"

namespace fairdiv {

namespace {

// containing[p] = positions into b.centers of the closed balls holding point p.
std::vector<std::vector<std::size_t>> containing_balls(const ColoredDataset& ds,
                                                       const BallSet& b) {
  std::vector<std::vector<std::size_t>> containing(ds.size());
  for (std::size_t p = 0; p < ds.size(); ++p) {
    for (std::size_t c = 0; c < b.centers.size(); ++c) {
      if (dist(ds.point(p), ds.point(b.centers[c]), ds.metric()) <= b.radius) {
        containing[p].push_back(c);
      }
    }
  }
  return containing;
}

void check_quota(const ColoredDataset& ds, const Quota& q) {
  if (q.num_colors() != static_cast<std::size_t>(ds.num_colors())) {
    throw InputError("quota has " + std::to_string(q.num_colors()) + " entries for " +
                     std::to_string(ds.num_colors()) + " colors");
  }
}

}  // namespace

void validate_ball_set(const ColoredDataset& ds, const BallSet& b) {
  if (b.radius < 0.0) throw std::logic_error("ball set with negative radius");
  for (std::size_t a = 0; a < b.centers.size(); ++a) {
    for (std::size_t c = a + 1; c < b.centers.size(); ++c) {
      if (dist(ds.point(b.centers[a]), ds.point(b.centers[c]), ds.metric()) < 2.0 * b.radius) {
        throw std::logic_error("ball set centers closer than twice the radius");
      }
    }
  }
}

std::size_t compute_t(std::span<const double> radii, std::size_t j) {
  if (j < 2 || j > radii.size()) throw InputError("compute_t: j out of range");
  const double half = radii[j - 1] / 2.0;
  std::size_t t = j;
  for (std::size_t cand = j; cand <= radii.size(); ++cand) {
    if (radii[cand - 1] >= half) t = cand;
  }
  return t;
}

BallApproach parse_approach(const std::string& name) {
  if (name == "exhaustive") return BallApproach::exhaustive;
  if (name == "halving") return BallApproach::halving;
  throw InputError("unknown approach '" + name + "' (expected exhaustive|halving)");
}

std::string to_string(BallApproach a) {
  return a == BallApproach::exhaustive ? "exhaustive" : "halving";
}

std::vector<std::size_t> select_balls_exhaustive(const ColoredDataset& ds, const BallSet& b,
                                                 int special, const Quota& q,
                                                 std::size_t max_size,
                                                 std::uint64_t subset_budget) {
  check_quota(ds, q);
  const std::size_t t = b.centers.size();
  const std::size_t zmax = std::min(max_size, t);

  long double subsets = 0.0L, choose = 1.0L;
  for (std::size_t z = 0; z <= zmax; ++z) {
    subsets += choose;
    choose = choose * static_cast<long double>(t - z) / static_cast<long double>(z + 1);
  }
  if (subsets > static_cast<long double>(subset_budget)) {
    throw BudgetError("exhaustive ball selection over " + std::to_string(t) +
                      " balls needs more than " + std::to_string(subset_budget) + " subsets");
  }

  const auto containing = containing_balls(ds, b);
  const std::size_t m = static_cast<std::size_t>(ds.num_colors());
  std::vector<std::vector<std::size_t>> members(t);
  for (std::size_t p = 0; p < ds.size(); ++p) {
    for (std::size_t c : containing[p]) members[c].push_back(p);
  }

  std::vector<std::size_t> chosen, best;
  bool have_best = false;
  std::vector<int> cover(ds.size(), 0);
  std::vector<std::size_t> inside(m, 0);

  // Include-first DFS visits subsets so that the first maximum-size feasible
  // subset found is also lexicographically first by center order.
  auto feasible = [&]() {
    for (std::size_t l = 0; l < m; ++l) {
      std::size_t need = q.k_per_color[l];
      if (l == static_cast<std::size_t>(special)) {
        need = need > chosen.size() ? need - chosen.size() : 0;
      }
      if (ds.group_size(static_cast<int>(l)) - inside[l] < need) return false;
    }
    return true;
  };

  auto dfs = [&](auto&& self, std::size_t depth) -> void {
    if (have_best && chosen.size() + (t - depth) <= best.size()) return;
    if (depth == t) {
      if ((!have_best || chosen.size() > best.size()) && feasible()) {
        best = chosen;
        have_best = true;
      }
      return;
    }
    if (chosen.size() < zmax) {
      chosen.push_back(depth);
      for (std::size_t p : members[depth]) {
        if (cover[p]++ == 0) inside[static_cast<std::size_t>(ds.point(p).color)]++;
      }
      self(self, depth + 1);
      for (std::size_t p : members[depth]) {
        if (--cover[p] == 0) inside[static_cast<std::size_t>(ds.point(p).color)]--;
      }
      chosen.pop_back();
    }
    self(self, depth + 1);
  };
  dfs(dfs, 0);

  if (!have_best) {
    // The empty subset is feasible whenever every color can fill its quota.
    throw InputError("ball selection infeasible: some color cannot fill its quota");
  }
  return best;
}

std::vector<std::size_t> select_balls_halving(const ColoredDataset& ds, const BallSet& b,
                                              int special, const Quota& q) {
  check_quota(ds, q);
  const std::size_t t = b.centers.size();
  const std::size_t cap = q.k_per_color[static_cast<std::size_t>(special)];
  const std::size_t m = static_cast<std::size_t>(ds.num_colors());

  const std::vector<std::size_t> b0 = select_balls_exhaustive(
      ds, b, special, q, std::min<std::size_t>(2, cap),
      std::numeric_limits<std::uint64_t>::max());

  // Every point counts toward exactly one location: its first containing ball,
  // or the outside. Demands start at the full quotas and shrink by whatever
  // lives outside the kept balls.
  const auto containing = containing_balls(ds, b);
  std::vector<std::vector<long long>> ball_colors(t, std::vector<long long>(m, 0));
  std::vector<long long> demand(m);
  for (std::size_t l = 0; l < m; ++l) demand[l] = static_cast<long long>(q.k_per_color[l]);
  for (std::size_t p = 0; p < ds.size(); ++p) {
    const auto l = static_cast<std::size_t>(ds.point(p).color);
    if (containing[p].empty()) {
      demand[l] = std::max(0LL, demand[l] - 1);
    } else {
      ball_colors[containing[p].front()][l]++;
    }
  }

  auto demands_open = [&]() {
    return std::any_of(demand.begin(), demand.end(), [](long long d) { return d > 0; });
  };
  auto counts_of = [&](std::span<const std::size_t> balls) {
    std::vector<long long> counts(m, 0);
    for (std::size_t c : balls) {
      for (std::size_t l = 0; l < m; ++l) counts[l] += ball_colors[c][l];
    }
    return counts;
  };

  std::vector<std::size_t> kept(t);
  for (std::size_t c = 0; c < t; ++c) kept[c] = c;

  while (demands_open() && !kept.empty()) {
    const std::size_t half = (kept.size() + 1) / 2;
    std::span<const std::size_t> a(kept.data(), half);
    std::span<const std::size_t> abar(kept.data() + half, kept.size() - half);
    const auto cnt_a = counts_of(a);
    const auto cnt_abar = counts_of(abar);
    std::size_t t_a = 0, t_abar = 0;
    for (std::size_t l = 0; l < m; ++l) {
      if (demand[l] <= 0) continue;
      if (cnt_a[l] > cnt_abar[l]) t_a++;
      if (cnt_abar[l] > cnt_a[l]) t_abar++;
    }
    const bool keep_a = t_abar >= t_a;
    const auto& discarded = keep_a ? cnt_abar : cnt_a;
    if ((keep_a ? abar : a).empty()) break;  // lone ball, nothing left to discard
    for (std::size_t l = 0; l < m; ++l) {
      if (demand[l] > 0) demand[l] = std::max(0LL, demand[l] - discarded[l]);
    }
    kept = keep_a ? std::vector<std::size_t>(a.begin(), a.end())
                  : std::vector<std::size_t>(abar.begin(), abar.end());
  }

  if (kept.size() > cap) kept.resize(cap);  // drop the latest centers
  return kept.size() > b0.size() ? kept : b0;
}

Selection solve_fdm_sum_nn(const ColoredDataset& ds, const Quota& q,
                           const SumNnOptions& opts) {
  check_quota(ds, q);
  const std::size_t m = static_cast<std::size_t>(ds.num_colors());
  for (std::size_t l = 0; l < m; ++l) {
    if (ds.group_size(static_cast<int>(l)) < q.k_per_color[l]) {
      throw InputError("color " + std::to_string(l) + " has " +
                       std::to_string(ds.group_size(static_cast<int>(l))) +
                       " points for quota " + std::to_string(q.k_per_color[l]));
    }
  }
  const std::size_t k = q.total();

  // Group ids sorted ascending, so "lowest-id" choices are prefix reads.
  std::vector<std::vector<PointId>> ids_by_color(m);
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t idx : ds.group(static_cast<int>(l))) {
      ids_by_color[l].push_back(ds.point(idx).id);
    }
    std::sort(ids_by_color[l].begin(), ids_by_color[l].end());
  }

  std::vector<PointId> init_ids;
  for (std::size_t l = 0; l < m; ++l) {
    init_ids.insert(init_ids.end(), ids_by_color[l].begin(),
                    ids_by_color[l].begin() + static_cast<std::ptrdiff_t>(q.k_per_color[l]));
  }
  Selection best(std::move(init_ids));
  if (k < 2) return best;
  double best_value = diversity(ds, best, DiversityMeasure::sum_nn);

  for (std::size_t i = 0; i < m; ++i) {
    if (q.k_per_color[i] == 0) continue;
    const auto& group = ds.group(static_cast<int>(i));
    const GmmRun run = gmm(ds, group, k);
    bool warned = false;

    for (std::size_t j = 2; j <= run.size(); ++j) {
      const std::size_t t = compute_t(run.radii, j);
      BallSet balls;
      balls.centers.reserve(t);
      for (std::size_t c = 0; c < t; ++c) balls.centers.push_back(ds.index_of(run.picks[c]));
      balls.radius = run.radii[t - 1] / 2.0;
      validate_ball_set(ds, balls);

      std::vector<std::size_t> chosen;
      if (opts.approach == BallApproach::exhaustive) {
        try {
          chosen = select_balls_exhaustive(ds, balls, static_cast<int>(i), q,
                                           q.k_per_color[i], opts.subset_budget);
        } catch (const BudgetError&) {
          if (!warned) {
            std::cerr << "warning: exhaustive ball selection over " << t
                      << " balls exceeds the subset budget; falling back to halving\n";
            warned = true;
          }
          chosen = select_balls_halving(ds, balls, static_cast<int>(i), q);
        }
      } else {
        chosen = select_balls_halving(ds, balls, static_cast<int>(i), q);
      }

      std::vector<char> covered(ds.size(), 0);
      for (std::size_t c : chosen) {
        for (std::size_t p = 0; p < ds.size(); ++p) {
          if (!covered[p] &&
              dist(ds.point(p), ds.point(balls.centers[c]), ds.metric()) <= balls.radius) {
            covered[p] = 1;
          }
        }
      }

      std::vector<PointId> cand_ids;
      cand_ids.reserve(k);
      for (std::size_t c : chosen) cand_ids.push_back(ds.point(balls.centers[c]).id);
      bool ok = true;
      for (std::size_t l = 0; l < m && ok; ++l) {
        std::size_t need = q.k_per_color[l];
        if (l == i) need -= chosen.size();
        for (PointId id : ids_by_color[l]) {
          if (need == 0) break;
          if (covered[ds.index_of(id)]) continue;
          cand_ids.push_back(id);
          need--;
        }
        if (need > 0) ok = false;
      }
      if (!ok) continue;

      Selection candidate(std::move(cand_ids));
      const double value = diversity(ds, candidate, DiversityMeasure::sum_nn);
      if (value > best_value) {
        best_value = value;
        best = std::move(candidate);
      }
    }
  }
  return best;
}

}  // namespace fairdiv
