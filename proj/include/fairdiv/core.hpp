#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fairdiv {

// Bad user input: malformed files, dimension mismatches, infeasible quotas.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An enumeration refused to run because it would exceed its configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MetricKind { euclidean, angular };
enum class DiversityMeasure { min_pairwise, sum_pairwise, sum_nn };

std::string to_string(MetricKind m);
std::string to_string(DiversityMeasure m);
MetricKind parse_metric(const std::string& name);
DiversityMeasure parse_measure(const std::string& name);

using PointId = std::int64_t;

struct Point {
  PointId id = 0;
  std::vector<double> vec;
  int color = 0;
};

// Distance between two vectors of equal dimension.
// euclidean = L2; angular = arccos(cosine similarity) / pi, which lands in
// [0,1] and keeps the triangle inequality (plain 1-cos does not).
double dist(std::span<const double> a, std::span<const double> b, MetricKind metric);
double dist(const Point& a, const Point& b, MetricKind metric);

// Immutable colored point set. Colors live in [0, m); all vectors share one
// dimension; ids are unique. Groups keep the original insertion order.
class ColoredDataset {
 public:
  ColoredDataset(std::vector<Point> points, int m, std::size_t dim, MetricKind metric);

  std::size_t size() const { return points_.size(); }
  int num_colors() const { return m_; }
  std::size_t dim() const { return dim_; }
  MetricKind metric() const { return metric_; }

  const std::vector<Point>& points() const { return points_; }
  const Point& point(std::size_t index) const { return points_[index]; }

  // Dataset indices of the points of one color, in insertion order.
  const std::vector<std::size_t>& group(int color) const;
  std::size_t group_size(int color) const { return group(color).size(); }

  bool contains(PointId id) const { return index_by_id_.count(id) != 0; }
  std::size_t index_of(PointId id) const;  // throws InputError on unknown id

 private:
  std::vector<Point> points_;
  int m_ = 0;
  std::size_t dim_ = 0;
  MetricKind metric_ = MetricKind::euclidean;
  std::vector<std::vector<std::size_t>> groups_;
  std::unordered_map<PointId, std::size_t> index_by_id_;
};

// A chosen subset of points, stored as sorted unique ids.
struct Selection {
  std::vector<PointId> ids;

  Selection() = default;
  explicit Selection(std::vector<PointId> chosen);

  std::size_t size() const { return ids.size(); }
  bool contains(PointId id) const;
};

// Per-color target counts; k is the sum.
struct Quota {
  std::vector<std::size_t> k_per_color;

  Quota() = default;
  explicit Quota(std::vector<std::size_t> per_color) : k_per_color(std::move(per_color)) {}

  std::size_t total() const;
  std::size_t num_colors() const { return k_per_color.size(); }
};

// min over members of dist(p, member). S must be non-empty.
double dist_to_set(const ColoredDataset& ds, const Point& p, const Selection& s);

// Diversity of a selection. Pairwise measures count each unordered pair once;
// sum_nn sums dist(p, S\{p}) over members. Requires |S| >= 2.
double diversity(const ColoredDataset& ds, const Selection& s, DiversityMeasure measure);

std::vector<std::size_t> per_color_counts(const ColoredDataset& ds, const Selection& s);

// True iff the selection hits every color target exactly.
bool validate(const ColoredDataset& ds, const Selection& s, const Quota& q);

}  // namespace fairdiv
