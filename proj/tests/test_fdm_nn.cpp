#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "common.hpp"
#include "fairdiv/fdm_nn.hpp"
#include "fairdiv/gmm.hpp"

using namespace fairdiv;
using namespace testutil;

namespace {

// Two colors on a line: A = {0, 4, 10}, B = {1, 9}; ids equal coordinates so
// expected selections read literally.
ColoredDataset two_color_line() {
  std::vector<Point> pts{
      {0, {0.0}, 0}, {4, {4.0}, 0}, {10, {10.0}, 0}, {1, {1.0}, 1}, {9, {9.0}, 1}};
  return ColoredDataset(std::move(pts), 2, 1, MetricKind::euclidean);
}

// Disjoint-by-construction ball system drawn from a farthest-point run, the
// same way the solver builds one.
BallSet balls_from_run(const ColoredDataset& ds, const GmmRun& run, std::size_t j) {
  const std::size_t t = compute_t(run.radii, j);
  BallSet b;
  for (std::size_t c = 0; c < t; ++c) b.centers.push_back(ds.index_of(run.picks[c]));
  b.radius = run.radii[t - 1] / 2.0;
  return b;
}

}  // namespace

TEST_CASE("the qualifying-iteration scan walks as far as the half-radius rule allows") {
  const double inf = std::numeric_limits<double>::infinity();
  CHECK(compute_t(std::vector<double>{inf, 10, 6, 4, 2}, 2) == 3);
  CHECK(compute_t(std::vector<double>{inf, 10, 10, 10}, 2) == 4);
  CHECK(compute_t(std::vector<double>{inf, 10}, 2) == 2);
  CHECK(compute_t(std::vector<double>{inf, 8, 5, 4, 3.9}, 3) == 5);
  CHECK_THROWS_AS(compute_t(std::vector<double>{inf, 10}, 1), InputError);
  CHECK_THROWS_AS(compute_t(std::vector<double>{inf, 10}, 3), InputError);
}

TEST_CASE("ball sets with overlapping balls are construction bugs") {
  const auto ds = line_dataset({0, 3, 10}, {0, 0, 0}, 1);
  BallSet ok{{0, 2}, 1.5};
  validate_ball_set(ds, ok);
  BallSet overlapping{{0, 1}, 1.6};
  CHECK_THROWS_AS(validate_ball_set(ds, overlapping), std::logic_error);
  BallSet negative{{0}, -0.1};
  CHECK_THROWS_AS(validate_ball_set(ds, negative), std::logic_error);
}

TEST_CASE("when quotas never bind, the exhaustive selection keeps the first balls") {
  // Centers at 0, 10, 20; a far-away crowd of both colors keeps every quota
  // satisfiable no matter which balls are chosen.
  const auto ds = line_dataset({0, 10, 20, 100, 101, 102, 103}, {0, 0, 0, 0, 0, 1, 1}, 2);
  const BallSet b{{0, 1, 2}, 1.0};
  const Quota q{{2, 1}};
  CHECK(select_balls_exhaustive(ds, b, 0, q, 2) == std::vector<std::size_t>{0, 1});
  CHECK(select_balls_exhaustive(ds, b, 0, q, 1) == std::vector<std::size_t>{0});
}

TEST_CASE("starved colors force the empty ball subset") {
  // One color, quota = the whole group, every ball covers two points:
  // removing any ball leaves too few survivors.
  const auto ds = line_dataset({0, 1, 10, 11}, {0, 0, 0, 0}, 1);
  const BallSet b{{0, 2}, 1.5};
  const Quota q{{4}};
  CHECK(select_balls_exhaustive(ds, b, 0, q, 4).empty());
}

TEST_CASE("exhaustive selection refuses oversized subset spaces") {
  std::mt19937_64 rng(51);
  const auto ds = make_dataset({40}, 2, MetricKind::euclidean, rng, 100.0);
  const auto run = gmm(ds, [&] {
    std::vector<std::size_t> idx(ds.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    return idx;
  }(), 20);
  const auto b = balls_from_run(ds, run, 2);
  CHECK_THROWS_AS(select_balls_exhaustive(ds, b, 0, Quota{{10}}, 10, 3), BudgetError);
}

TEST_CASE("exhaustive selection matches the bitmask reference on random instances") {
  std::mt19937_64 rng(52);
  int nonempty = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 1 + pick_index(rng, 3);
    std::vector<std::size_t> per_color(m), quota(m);
    for (std::size_t c = 0; c < m; ++c) {
      per_color[c] = 2 + pick_index(rng, 6);
      quota[c] = 1 + pick_index(rng, 2);
    }
    const auto ds = make_dataset(per_color, 2, MetricKind::euclidean, rng);
    const int special = static_cast<int>(pick_index(rng, m));
    const auto& group = ds.group(special);
    if (group.size() < 2) continue;

    const auto run = gmm(ds, group, quota[static_cast<std::size_t>(special)] + 2);
    if (run.size() < 2) continue;
    const auto b = balls_from_run(ds, run, 2);
    const std::size_t max_size = quota[static_cast<std::size_t>(special)];

    const auto got = select_balls_exhaustive(ds, b, special, Quota{quota}, max_size);
    const auto want = ball_subset_oracle(
        {ds, b.centers, b.radius, special, quota, max_size});
    CHECK(got == want);
    if (!got.empty()) ++nonempty;
  }
  CHECK(nonempty > 10);
}

TEST_CASE("halving keeps the leading balls when quotas are already satisfied outside") {
  const auto ds = line_dataset({0, 10, 20, 100, 101, 102, 103}, {0, 0, 0, 0, 0, 1, 1}, 2);
  const BallSet b{{0, 1, 2}, 1.0};
  CHECK(select_balls_halving(ds, b, 0, Quota{{2, 1}}) == std::vector<std::size_t>{0, 1});
  CHECK(select_balls_halving(ds, b, 0, Quota{{1, 1}}) == std::vector<std::size_t>{0});
}

TEST_CASE("the size-two search rescues instances the halving pass abandons") {
  // Ball 0 holds three points, ball 1 holds one; halving discards ball 0 and
  // ends with a single ball, while the optimum {0, 1} has size two.
  const auto ds = line_dataset({0, 0.5, -0.5, 10}, {0, 0, 0, 0}, 1);
  const BallSet b{{0, 3}, 0.6};
  const auto got = select_balls_halving(ds, b, 0, Quota{{2}});
  CHECK(got == std::vector<std::size_t>{0, 1});
}

TEST_CASE("halving lands within a factor m of the exhaustive optimum") {
  std::mt19937_64 rng(53);
  int checked = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t m = 1 + pick_index(rng, 3);
    std::vector<std::size_t> per_color(m), quota(m);
    for (std::size_t c = 0; c < m; ++c) {
      quota[c] = 1 + pick_index(rng, 3);
      per_color[c] = 2 * quota[c] + pick_index(rng, 5);
    }
    const auto ds = make_dataset(per_color, 2, MetricKind::euclidean, rng);
    const int special = static_cast<int>(pick_index(rng, m));
    const auto& group = ds.group(special);

    const auto run = gmm(ds, group, quota[static_cast<std::size_t>(special)] + 3);
    if (run.size() < 2) continue;
    const std::size_t j = 2 + pick_index(rng, run.size() - 1);
    const auto b = balls_from_run(ds, run, j);
    const std::size_t max_size = quota[static_cast<std::size_t>(special)];

    const auto exact = select_balls_exhaustive(ds, b, special, Quota{quota}, max_size);
    const auto approx = select_balls_halving(ds, b, special, Quota{quota});
    // The halving output is always feasible, so it can never beat the optimum.
    CHECK(approx.size() <= exact.size());
    // The size-two search makes the result exact whenever the optimum is <= 2.
    CHECK(approx.size() >= std::min<std::size_t>(2, exact.size()));
    // The procedure runs at least one halving iteration whenever demands start
    // positive and charges the special color its full quota, so the provable
    // factor is 2m, not m: a single-color instance with optimum 3 (all points
    // inside balls, relaxed special-color constraint) legitimately returns 2.
    CHECK(approx.size() * 2 * m >= exact.size());
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("the ball solver finds the optimum on the two-color line") {
  const auto ds = two_color_line();
  const Quota q{{2, 1}};
  const Selection got = solve_fdm_sum_nn(ds, q);
  CHECK(got.ids == std::vector<PointId>{0, 4, 9});
  CHECK(diversity(ds, got, DiversityMeasure::sum_nn) == 13.0);
}

TEST_CASE("single-point colors force the only valid selection") {
  std::vector<Point> pts{{5, {0.0}, 0}, {7, {3.0}, 1}, {2, {9.0}, 2}};
  const ColoredDataset ds(pts, 3, 1, MetricKind::euclidean);
  const Quota q{{1, 1, 1}};
  for (auto approach : {BallApproach::exhaustive, BallApproach::halving}) {
    const Selection got = solve_fdm_sum_nn(ds, q, SumNnOptions{approach});
    CHECK(got.ids == std::vector<PointId>{2, 5, 7});
  }
}

TEST_CASE("a total quota below two returns the lowest-id initialization") {
  const auto ds = two_color_line();
  const Selection got = solve_fdm_sum_nn(ds, Quota{{1, 0}});
  CHECK(got.ids == std::vector<PointId>{0});
  CHECK(solve_fdm_sum_nn(ds, Quota{{0, 0}}).ids.empty());
}

TEST_CASE("infeasible quotas are rejected before any work") {
  const auto ds = two_color_line();
  CHECK_THROWS_AS(solve_fdm_sum_nn(ds, Quota{{4, 1}}), InputError);
  CHECK_THROWS_AS(solve_fdm_sum_nn(ds, Quota{{2, 1, 1}}), InputError);
}

TEST_CASE("the solver never falls below its own starting selection") {
  std::mt19937_64 rng(54);
  for (int rep = 0; rep < 30; ++rep) {
    const std::size_t m = 1 + pick_index(rng, 3);
    std::vector<std::size_t> per_color(m), quota(m);
    for (std::size_t c = 0; c < m; ++c) {
      quota[c] = 1 + pick_index(rng, 2);
      per_color[c] = quota[c] + pick_index(rng, 8);
    }
    const auto ds = make_dataset(per_color, 3, MetricKind::euclidean, rng);
    const Quota q{quota};

    std::vector<PointId> init_ids;
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<PointId> ids;
      for (std::size_t idx : ds.group(static_cast<int>(c))) ids.push_back(ds.point(idx).id);
      std::sort(ids.begin(), ids.end());
      init_ids.insert(init_ids.end(), ids.begin(),
                      ids.begin() + static_cast<std::ptrdiff_t>(quota[c]));
    }
    const Selection init(init_ids);
    const Selection got = solve_fdm_sum_nn(ds, q);
    CHECK(validate(ds, got, q));
    if (q.total() >= 2) {
      CHECK(diversity(ds, got, DiversityMeasure::sum_nn) >=
            diversity(ds, init, DiversityMeasure::sum_nn));
    }
  }
}

TEST_CASE("the exhaustive approach never scores below halving") {
  std::mt19937_64 rng(55);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t m = 1 + pick_index(rng, 3);
    std::vector<std::size_t> per_color(m), quota(m);
    for (std::size_t c = 0; c < m; ++c) {
      quota[c] = 1 + pick_index(rng, 2);
      per_color[c] = 2 * quota[c] + pick_index(rng, 6);
    }
    const auto ds = make_dataset(per_color, 2, MetricKind::euclidean, rng);
    const Quota q{quota};
    if (q.total() < 2) continue;

    const Selection ex = solve_fdm_sum_nn(ds, q, SumNnOptions{BallApproach::exhaustive});
    const Selection ha = solve_fdm_sum_nn(ds, q, SumNnOptions{BallApproach::halving});
    CHECK(diversity(ds, ex, DiversityMeasure::sum_nn) >=
          diversity(ds, ha, DiversityMeasure::sum_nn));
  }
}

TEST_CASE("an exhausted subset budget degrades to the halving approach") {
  std::mt19937_64 rng(56);
  const auto ds = make_dataset({12, 10}, 3, MetricKind::euclidean, rng);
  const Quota q{{3, 2}};
  const Selection fallback =
      solve_fdm_sum_nn(ds, q, SumNnOptions{BallApproach::exhaustive, 1});
  const Selection halving = solve_fdm_sum_nn(ds, q, SumNnOptions{BallApproach::halving});
  CHECK(fallback.ids == halving.ids);
}
