#include "fairdiv/solvers.hpp"

#include <algorithm>
#include <limits>

#include "fairdiv/fdm_nn.hpp"
#include "fairdiv/gmm.hpp"

namespace fairdiv {

namespace {

void check_feasible(const ColoredDataset& ds, const Quota& q) {
  if (q.num_colors() != static_cast<std::size_t>(ds.num_colors())) {
    throw InputError("quota has " + std::to_string(q.num_colors()) + " entries for " +
                     std::to_string(ds.num_colors()) + " colors");
  }
  for (int l = 0; l < ds.num_colors(); ++l) {
    if (ds.group_size(l) < q.k_per_color[static_cast<std::size_t>(l)]) {
      throw InputError("color " + std::to_string(l) + " has " + std::to_string(ds.group_size(l)) +
                       " points for quota " +
                       std::to_string(q.k_per_color[static_cast<std::size_t>(l)]));
    }
  }
}

std::vector<PointId> sorted_group_ids(const ColoredDataset& ds, int color) {
  std::vector<PointId> ids;
  ids.reserve(ds.group_size(color));
  for (std::size_t idx : ds.group(color)) ids.push_back(ds.point(idx).id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Pairwise distances cached up front; falls back to direct evaluation when the
// matrix would be too large for the enumeration at hand.
class DistTable {
 public:
  explicit DistTable(const ColoredDataset& ds) : ds_(ds) {
    if (ds.size() <= 2048) {
      const std::size_t n = ds.size();
      table_.resize(n * n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double d = dist(ds.point(i), ds.point(j), ds.metric());
          table_[i * n + j] = d;
          table_[j * n + i] = d;
        }
      }
    }
  }

  double operator()(std::size_t i, std::size_t j) const {
    if (!table_.empty()) return table_[i * ds_.size() + j];
    return dist(ds_.point(i), ds_.point(j), ds_.metric());
  }

 private:
  const ColoredDataset& ds_;
  std::vector<double> table_;
};

double evaluate(const DistTable& d, std::span<const std::size_t> idx, DiversityMeasure measure) {
  if (measure == DiversityMeasure::sum_nn) {
    double total = 0.0;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      double nn = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < idx.size(); ++j) {
        if (j != i) nn = std::min(nn, d(idx[i], idx[j]));
      }
      total += nn;
    }
    return total;
  }
  double min_pair = std::numeric_limits<double>::infinity();
  double sum_pair = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      const double v = d(idx[i], idx[j]);
      min_pair = std::min(min_pair, v);
      sum_pair += v;
    }
  }
  return measure == DiversityMeasure::min_pairwise ? min_pair : sum_pair;
}

}  // namespace

OracleResult brute_force_fdm(const ColoredDataset& ds, const Quota& q, DiversityMeasure measure,
                             std::uint64_t budget) {
  check_feasible(ds, q);
  const std::size_t m = static_cast<std::size_t>(ds.num_colors());
  const std::size_t k = q.total();
  if (k < 2) throw InputError("brute force needs a total quota of at least two");

  long double candidates = 1.0L;
  for (std::size_t l = 0; l < m; ++l) {
    const std::size_t n_l = ds.group_size(static_cast<int>(l));
    long double choose = 1.0L;
    for (std::size_t z = 0; z < q.k_per_color[l]; ++z) {
      choose = choose * static_cast<long double>(n_l - z) / static_cast<long double>(z + 1);
    }
    candidates *= choose;
    if (candidates > static_cast<long double>(budget)) {
      throw BudgetError("brute force would enumerate more than " + std::to_string(budget) +
                        " selections");
    }
  }

  const DistTable table(ds);
  std::vector<std::vector<std::size_t>> groups(m);  // dataset indices, ascending id
  for (std::size_t l = 0; l < m; ++l) {
    for (PointId id : sorted_group_ids(ds, static_cast<int>(l))) {
      groups[l].push_back(ds.index_of(id));
    }
  }

  std::vector<std::size_t> current;
  std::vector<PointId> best_ids;
  double best_value = -std::numeric_limits<double>::infinity();
  bool have_best = false;

  auto consider = [&]() {
    std::vector<std::size_t> idx = current;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return ds.point(a).id < ds.point(b).id; });
    const double value = evaluate(table, idx, measure);
    std::vector<PointId> ids(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) ids[i] = ds.point(idx[i]).id;
    if (!have_best || value > best_value || (value == best_value && ids < best_ids)) {
      have_best = true;
      best_value = value;
      best_ids = std::move(ids);
    }
  };

  // Nested lexicographic combination walk, one level per color.
  auto enumerate = [&](auto&& self, std::size_t color) -> void {
    if (color == m) {
      consider();
      return;
    }
    const auto& pool = groups[color];
    const std::size_t need = q.k_per_color[color];
    std::vector<std::size_t> combo(need);
    auto walk = [&](auto&& inner, std::size_t pos, std::size_t start) -> void {
      if (pos == need) {
        for (std::size_t c : combo) current.push_back(c);
        self(self, color + 1);
        current.resize(current.size() - need);
        return;
      }
      for (std::size_t i = start; i + (need - pos) <= pool.size(); ++i) {
        combo[pos] = pool[i];
        inner(inner, pos + 1, i + 1);
      }
    };
    walk(walk, 0, 0);
  };
  enumerate(enumerate, 0);

  OracleResult result;
  result.selection = Selection(std::move(best_ids));
  result.value = best_value;
  return result;
}

Selection local_search_sum_pairwise(const ColoredDataset& ds, const Quota& q, double eps) {
  check_feasible(ds, q);
  const std::size_t k = q.total();
  if (k < 2) throw InputError("local search needs a total quota of at least two");
  if (eps < 0.0) throw InputError("eps must be non-negative");

  std::vector<PointId> ids;
  for (int l = 0; l < ds.num_colors(); ++l) {
    const std::size_t k_l = q.k_per_color[static_cast<std::size_t>(l)];
    if (k_l == 0) continue;
    for (PointId id : gmm(ds, ds.group(l), k_l).picks) ids.push_back(id);
  }
  Selection sel(std::move(ids));
  double value = diversity(ds, sel, DiversityMeasure::sum_pairwise);
  const double threshold = 1.0 + eps / static_cast<double>(k);

  std::vector<std::size_t> member_idx(k);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < sel.ids.size(); ++i) {
      member_idx[i] = ds.index_of(sel.ids[i]);
    }
    for (std::size_t u = 0; u < sel.ids.size() && !improved; ++u) {
      const int color = ds.point(member_idx[u]).color;
      double attached = 0.0;
      for (std::size_t s = 0; s < sel.ids.size(); ++s) {
        if (s != u) attached += dist(ds.point(member_idx[u]), ds.point(member_idx[s]), ds.metric());
      }
      for (PointId v : sorted_group_ids(ds, color)) {
        if (sel.contains(v)) continue;
        const std::size_t v_idx = ds.index_of(v);
        double replacement = 0.0;
        for (std::size_t s = 0; s < sel.ids.size(); ++s) {
          if (s != u) replacement += dist(ds.point(v_idx), ds.point(member_idx[s]), ds.metric());
        }
        if (value - attached + replacement > value * threshold) {
          std::vector<PointId> next = sel.ids;
          next[u] = v;
          sel = Selection(std::move(next));
          value = diversity(ds, sel, DiversityMeasure::sum_pairwise);
          improved = true;
          break;
        }
      }
    }
  }
  return sel;
}

Selection fair_greedy_min_pairwise(const ColoredDataset& ds, const Quota& q) {
  check_feasible(ds, q);
  const std::size_t k = q.total();
  std::vector<std::size_t> remaining = q.k_per_color;
  std::vector<char> picked(ds.size(), 0);
  std::vector<double> to_set(ds.size(), std::numeric_limits<double>::infinity());
  std::vector<PointId> ids;
  ids.reserve(k);

  auto eligible = [&](std::size_t p) {
    return !picked[p] && remaining[static_cast<std::size_t>(ds.point(p).color)] > 0;
  };

  while (ids.size() < k) {
    std::size_t best = ds.size();
    for (std::size_t p = 0; p < ds.size(); ++p) {
      if (!eligible(p)) continue;
      if (best == ds.size() || to_set[p] > to_set[best]) best = p;
    }
    picked[best] = 1;
    remaining[static_cast<std::size_t>(ds.point(best).color)]--;
    ids.push_back(ds.point(best).id);
    for (std::size_t p = 0; p < ds.size(); ++p) {
      if (!picked[p]) {
        to_set[p] = std::min(to_set[p], dist(ds.point(p), ds.point(best), ds.metric()));
      }
    }
  }
  return Selection(std::move(ids));
}

Selection solve_dm(const ColoredDataset& ds, std::size_t k, DiversityMeasure measure) {
  if (ds.size() < k) {
    throw InputError("dataset has " + std::to_string(ds.size()) + " points for k = " +
                     std::to_string(k));
  }
  if (k < 2) {
    std::vector<PointId> ids;
    for (const Point& p : ds.points()) ids.push_back(p.id);
    std::sort(ids.begin(), ids.end());
    ids.resize(k);
    return Selection(std::move(ids));
  }

  if (measure == DiversityMeasure::min_pairwise) {
    std::vector<std::size_t> pool(ds.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    return Selection(gmm(ds, pool, k).picks);
  }

  std::vector<Point> merged = ds.points();
  for (Point& p : merged) p.color = 0;
  const ColoredDataset flat(std::move(merged), 1, ds.dim(), ds.metric());
  const Quota q(std::vector<std::size_t>{k});
  if (measure == DiversityMeasure::sum_pairwise) {
    return local_search_sum_pairwise(flat, q);
  }
  return solve_fdm_sum_nn(flat, q);
}

}  // namespace fairdiv
