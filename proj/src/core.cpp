#include "fairdiv/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairdiv {

std::string to_string(MetricKind m) {
  return m == MetricKind::euclidean ? "euclidean" : "angular";
}

std::string to_string(DiversityMeasure m) {
  switch (m) {
    case DiversityMeasure::min_pairwise: return "min_pairwise";
    case DiversityMeasure::sum_pairwise: return "sum_pairwise";
    case DiversityMeasure::sum_nn: return "sum_nn";
  }
  return "unknown";
}

MetricKind parse_metric(const std::string& name) {
  if (name == "euclidean") return MetricKind::euclidean;
  if (name == "angular") return MetricKind::angular;
  throw InputError("unknown metric '" + name + "' (expected euclidean|angular)");
}

DiversityMeasure parse_measure(const std::string& name) {
  if (name == "min_pairwise") return DiversityMeasure::min_pairwise;
  if (name == "sum_pairwise") return DiversityMeasure::sum_pairwise;
  if (name == "sum_nn") return DiversityMeasure::sum_nn;
  throw InputError("unknown measure '" + name +
                   "' (expected min_pairwise|sum_pairwise|sum_nn)");
}

double dist(std::span<const double> a, std::span<const double> b, MetricKind metric) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                     std::to_string(b.size()));
  }
  if (metric == MetricKind::euclidean) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double d = a[i] - b[i];
      sq += d * d;
    }
    return std::sqrt(sq);
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw InputError("angular distance undefined for zero vectors");
  }
  // sqrt(na)*sqrt(nb) can land a hair above dot for identical vectors; keep
  // dist(p, p) == 0 exact so duplicate points are detected as such.
  if (std::equal(a.begin(), a.end(), b.begin())) return 0.0;
  const double cosine = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
  return std::acos(cosine) / std::acos(-1.0);
}

double dist(const Point& a, const Point& b, MetricKind metric) {
  return dist(std::span<const double>(a.vec), std::span<const double>(b.vec), metric);
}

ColoredDataset::ColoredDataset(std::vector<Point> points, int m, std::size_t dim,
                               MetricKind metric)
    : points_(std::move(points)), m_(m), dim_(dim), metric_(metric) {
  if (m_ < 1) throw InputError("dataset needs at least one color");
  groups_.resize(static_cast<std::size_t>(m_));
  index_by_id_.reserve(points_.size());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const Point& p = points_[i];
    if (p.vec.size() != dim_) {
      throw InputError("point id " + std::to_string(p.id) + " has dimension " +
                       std::to_string(p.vec.size()) + ", expected " + std::to_string(dim_));
    }
    if (p.color < 0 || p.color >= m_) {
      throw InputError("point id " + std::to_string(p.id) + " has color " +
                       std::to_string(p.color) + " outside [0," + std::to_string(m_) + ")");
    }
    if (!index_by_id_.emplace(p.id, i).second) {
      throw InputError("duplicate point id " + std::to_string(p.id));
    }
    groups_[static_cast<std::size_t>(p.color)].push_back(i);
  }
}

const std::vector<std::size_t>& ColoredDataset::group(int color) const {
  if (color < 0 || color >= m_) {
    throw InputError("color " + std::to_string(color) + " outside [0," +
                     std::to_string(m_) + ")");
  }
  return groups_[static_cast<std::size_t>(color)];
}

std::size_t ColoredDataset::index_of(PointId id) const {
  auto it = index_by_id_.find(id);
  if (it == index_by_id_.end()) {
    throw InputError("unknown point id " + std::to_string(id));
  }
  return it->second;
}

Selection::Selection(std::vector<PointId> chosen) : ids(std::move(chosen)) {
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw InputError("selection contains a duplicate id");
  }
}

bool Selection::contains(PointId id) const {
  return std::binary_search(ids.begin(), ids.end(), id);
}

std::size_t Quota::total() const {
  std::size_t k = 0;
  for (std::size_t ki : k_per_color) k += ki;
  return k;
}

double dist_to_set(const ColoredDataset& ds, const Point& p, const Selection& s) {
  if (s.ids.empty()) throw InputError("dist_to_set: empty selection");
  double best = std::numeric_limits<double>::infinity();
  for (PointId id : s.ids) {
    best = std::min(best, dist(p, ds.point(ds.index_of(id)), ds.metric()));
  }
  return best;
}

double diversity(const ColoredDataset& ds, const Selection& s, DiversityMeasure measure) {
  const std::size_t k = s.size();
  if (k < 2) throw InputError("diversity undefined for fewer than two points");
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = ds.index_of(s.ids[i]);

  if (measure == DiversityMeasure::sum_nn) {
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      double nn = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < k; ++j) {
        if (j == i) continue;
        nn = std::min(nn, dist(ds.point(idx[i]), ds.point(idx[j]), ds.metric()));
      }
      total += nn;
    }
    return total;
  }

  double min_pair = std::numeric_limits<double>::infinity();
  double sum_pair = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      const double d = dist(ds.point(idx[i]), ds.point(idx[j]), ds.metric());
      min_pair = std::min(min_pair, d);
      sum_pair += d;
    }
  }
  return measure == DiversityMeasure::min_pairwise ? min_pair : sum_pair;
}

std::vector<std::size_t> per_color_counts(const ColoredDataset& ds, const Selection& s) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(ds.num_colors()), 0);
  for (PointId id : s.ids) {
    counts[static_cast<std::size_t>(ds.point(ds.index_of(id)).color)]++;
  }
  return counts;
}

bool validate(const ColoredDataset& ds, const Selection& s, const Quota& q) {
  if (q.num_colors() != static_cast<std::size_t>(ds.num_colors())) {
    throw InputError("quota has " + std::to_string(q.num_colors()) + " entries for " +
                     std::to_string(ds.num_colors()) + " colors");
  }
  for (PointId id : s.ids) {
    if (!ds.contains(id)) return false;
  }
  return per_color_counts(ds, s) == q.k_per_color;
}

}  // namespace fairdiv
