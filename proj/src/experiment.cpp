#include "fairdiv/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <future>
#include <iomanip>

#include "fairdiv/coreset.hpp"
#include "fairdiv/dataset_io.hpp"
#include "fairdiv/solvers.hpp"
#include "fairdiv/synthetic.hpp"

namespace fairdiv {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt_quota(const Quota& q) {
  std::string out;
  for (std::size_t i = 0; i < q.k_per_color.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(q.k_per_color[i]);
  }
  return out;
}

std::string fmt_histogram(const std::vector<std::size_t>& hist) {
  std::string out;
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (i) out += '|';
    out += std::to_string(hist[i]);
  }
  return out;
}

std::size_t parse_count(const std::string& text) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::logic_error&) {
    throw InputError("cannot parse count from '" + text + "'");
  }
  if (pos != text.size()) throw InputError("cannot parse count from '" + text + "'");
  return static_cast<std::size_t>(v);
}

void check_feasible_quota(const ColoredDataset& ds, const Quota& q) {
  for (int l = 0; l < ds.num_colors(); ++l) {
    const std::size_t k_l = q.k_per_color[static_cast<std::size_t>(l)];
    if (ds.group_size(l) < k_l) {
      throw InputError("color " + std::to_string(l) + " has " + std::to_string(ds.group_size(l)) +
                       " points for quota " + std::to_string(k_l));
    }
  }
}

std::vector<std::size_t> build_group_coreset(const ColoredDataset& ds,
                                             std::span<const std::size_t> group,
                                             std::size_t k_i, std::size_t k,
                                             DiversityMeasure measure) {
  if (group.empty()) return {};
  switch (measure) {
    case DiversityMeasure::sum_pairwise: return build_coreset_sum_pairwise(ds, group, k_i);
    case DiversityMeasure::sum_nn: return build_coreset_sum_nn(ds, group, k);
    case DiversityMeasure::min_pairwise: return build_coreset_min_pairwise(ds, group, k_i);
  }
  return {};
}

}  // namespace

Quota parse_quota(const std::string& spec, int m) {
  if (m < 1) throw InputError("quota needs at least one color");
  const std::size_t colors = static_cast<std::size_t>(m);
  if (spec.rfind("uniform:", 0) == 0) {
    const std::size_t c = parse_count(spec.substr(8));
    return Quota(std::vector<std::size_t>(colors, c));
  }
  if (spec.rfind("ramp:", 0) == 0) {
    const std::size_t c = parse_count(spec.substr(5));
    std::vector<std::size_t> k(colors);
    for (std::size_t i = 0; i < colors; ++i) k[i] = c * (i + 1);
    return Quota(std::move(k));
  }
  std::vector<std::size_t> k;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    std::size_t end = spec.find(',', pos);
    if (end == std::string::npos) end = spec.size();
    k.push_back(parse_count(spec.substr(pos, end - pos)));
    pos = end + 1;
  }
  if (k.size() != colors) {
    throw InputError("quota '" + spec + "' has " + std::to_string(k.size()) + " entries for " +
                     std::to_string(m) + " colors");
  }
  return Quota(std::move(k));
}

ColoredDataset load_dataset(const std::string& dataset, const std::string& format,
                            MetricKind metric, int time_colors, std::uint64_t seed) {
  std::vector<RawRecord> records;
  if (is_synth_spec(dataset)) {
    SyntheticSpec spec = parse_synth_spec(dataset);
    spec.seed = seed;
    records = make_clustered(spec);
  } else {
    records = read_records(dataset, format_for_path(dataset, format));
  }
  if (records.empty()) throw InputError("dataset '" + dataset + "' holds no records");
  if (records.front().t.has_value()) {
    if (time_colors < 1) {
      throw InputError("dataset carries timestamps; pass the number of color bins");
    }
    return assign_colors_by_time(records, time_colors, metric);
  }
  if (time_colors > 0) {
    throw InputError("dataset already carries explicit colors; cannot bucket by time");
  }
  return dataset_from_records(records, metric);
}

Selection solve_fdm(const ColoredDataset& ds, const Quota& q, DiversityMeasure measure,
                    BallApproach approach, double eps) {
  switch (measure) {
    case DiversityMeasure::min_pairwise: return fair_greedy_min_pairwise(ds, q);
    case DiversityMeasure::sum_pairwise: return local_search_sum_pairwise(ds, q, eps);
    case DiversityMeasure::sum_nn: {
      SumNnOptions opts;
      opts.approach = approach;
      return solve_fdm_sum_nn(ds, q, opts);
    }
  }
  throw InputError("unknown measure");
}

ColoredDataset coreset_union(const ColoredDataset& ds, const Quota& q,
                             DiversityMeasure measure) {
  const std::size_t k = q.total();
  std::vector<std::future<std::vector<std::size_t>>> jobs;
  for (int l = 0; l < ds.num_colors(); ++l) {
    jobs.push_back(std::async(std::launch::async, [&, l]() {
      return build_group_coreset(ds, ds.group(l), q.k_per_color[static_cast<std::size_t>(l)],
                                 k, measure);
    }));
  }
  std::vector<Point> points;
  for (auto& job : jobs) {
    for (std::size_t idx : job.get()) points.push_back(ds.point(idx));
  }
  return ColoredDataset(std::move(points), ds.num_colors(), ds.dim(), ds.metric());
}

ColoredDataset composable_coreset(std::span<const ColoredDataset> partitions, const Quota& q,
                                  DiversityMeasure measure) {
  if (partitions.empty()) throw InputError("composable core-set needs at least one partition");
  const int m = partitions.front().num_colors();
  const std::size_t dim = partitions.front().dim();
  const MetricKind metric = partitions.front().metric();
  for (const ColoredDataset& part : partitions) {
    if (part.num_colors() != m || part.dim() != dim || part.metric() != metric) {
      throw InputError("partitions disagree on colors, dimension, or metric");
    }
  }
  if (q.num_colors() != static_cast<std::size_t>(m)) {
    throw InputError("quota has " + std::to_string(q.num_colors()) + " entries for " +
                     std::to_string(m) + " colors");
  }
  const std::size_t k = q.total();
  std::vector<Point> points;
  for (const ColoredDataset& part : partitions) {
    for (int l = 0; l < m; ++l) {
      for (std::size_t idx :
           build_group_coreset(part, part.group(l), q.k_per_color[static_cast<std::size_t>(l)],
                               k, measure)) {
        points.push_back(part.point(idx));
      }
    }
  }
  return ColoredDataset(std::move(points), m, dim, metric);
}

Report run_experiment(const ExperimentConfig& cfg) {
  const MetricKind metric = parse_metric(cfg.metric);
  const BallApproach approach = parse_approach(cfg.approach);
  if (cfg.measures.empty()) throw InputError("experiment needs at least one measure");
  std::vector<DiversityMeasure> measures;
  for (const std::string& name : cfg.measures) measures.push_back(parse_measure(name));

  const ColoredDataset ds =
      load_dataset(cfg.dataset, cfg.format, metric, cfg.time_colors, cfg.seed);
  const Quota q = parse_quota(cfg.quota, ds.num_colors());
  check_feasible_quota(ds, q);
  const std::size_t k = q.total();

  Report report;
  for (DiversityMeasure measure : measures) {
    MeasureRow row;
    row.measure = measure;
    row.quota = q;
    row.n = ds.size();
    row.m = ds.num_colors();

    auto start = std::chrono::steady_clock::now();
    const Selection full = solve_fdm(ds, q, measure, approach, cfg.eps);
    row.full_ms = ms_since(start);
    row.full_value = k >= 2 ? diversity(ds, full, measure) : 0.0;
    row.histogram = per_color_counts(ds, full);

    if (cfg.use_coresets) {
      start = std::chrono::steady_clock::now();
      const ColoredDataset compact = coreset_union(ds, q, measure);
      row.coreset_build_ms = ms_since(start);
      row.coreset_size = compact.size();

      start = std::chrono::steady_clock::now();
      const Selection on_coreset = solve_fdm(compact, q, measure, approach, cfg.eps);
      row.coreset_ms = ms_since(start);
      row.coreset_value = k >= 2 ? diversity(compact, on_coreset, measure) : 0.0;
      row.loss_pct =
          row.full_value != 0.0
              ? (row.full_value - row.coreset_value) / row.full_value * 100.0
              : 0.0;
      row.speedup = row.coreset_ms > 0.0 ? row.full_ms / row.coreset_ms : 0.0;
      row.has_coreset = true;
    }

    if (cfg.dm_compare && k >= 2) {
      const Selection dm = solve_dm(ds, k, measure);
      row.dm_value = diversity(ds, dm, measure);
      row.dm_loss_pct =
          row.dm_value != 0.0 ? (row.dm_value - row.full_value) / row.dm_value * 100.0 : 0.0;
      row.dm_histogram = per_color_counts(ds, dm);
      row.has_dm = true;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_report_csv(std::ostream& out, const Report& report, bool timing) {
  out << "measure,quota,n,m,full_value,coreset_value,loss_pct,full_ms,coreset_ms,speedup,"
         "coreset_size\n";
  for (const MeasureRow& row : report.rows) {
    out << to_string(row.measure) << ',' << fmt_quota(row.quota) << ',' << row.n << ','
        << row.m << ',' << fmt_double(row.full_value) << ',';
    if (row.has_coreset) out << fmt_double(row.coreset_value);
    out << ',';
    if (row.has_coreset) out << fmt_double(row.loss_pct);
    out << ',';
    if (timing) out << fmt_double(row.full_ms);
    out << ',';
    if (timing && row.has_coreset) out << fmt_double(row.coreset_ms);
    out << ',';
    if (timing && row.has_coreset) out << fmt_double(row.speedup);
    out << ',';
    if (row.has_coreset) out << row.coreset_size;
    out << '\n';
  }
}

void write_dm_csv(std::ostream& out, const Report& report) {
  out << "measure,quota,n,m,dm_value,fdm_value,dm_loss_pct,dm_histogram\n";
  for (const MeasureRow& row : report.rows) {
    if (!row.has_dm) continue;
    out << to_string(row.measure) << ',' << fmt_quota(row.quota) << ',' << row.n << ','
        << row.m << ',' << fmt_double(row.dm_value) << ',' << fmt_double(row.full_value) << ','
        << fmt_double(row.dm_loss_pct) << ',' << fmt_histogram(row.dm_histogram) << '\n';
  }
}

void print_report(std::ostream& out, const Report& report, bool timing) {
  for (const MeasureRow& row : report.rows) {
    out << to_string(row.measure) << "  quota=[" << fmt_quota(row.quota) << "]  n=" << row.n
        << "  m=" << row.m << '\n';
    out << "  fair value      " << fmt_double(row.full_value) << "  per-color ["
        << fmt_histogram(row.histogram) << "]";
    if (timing) out << "  (" << fmt_double(row.full_ms) << " ms)";
    out << '\n';
    if (row.has_coreset) {
      out << "  core-set value  " << fmt_double(row.coreset_value) << "  loss "
          << fmt_double(row.loss_pct) << "%  size " << row.coreset_size;
      if (timing) {
        out << "  (build " << fmt_double(row.coreset_build_ms) << " ms, solve "
            << fmt_double(row.coreset_ms) << " ms, speedup " << fmt_double(row.speedup) << "x)";
      }
      out << '\n';
    }
    if (row.has_dm) {
      out << "  unconstrained   " << fmt_double(row.dm_value) << "  fairness cost "
          << fmt_double(row.dm_loss_pct) << "%  per-color [" << fmt_histogram(row.dm_histogram)
          << "]\n";
    }
  }
}

}  // namespace fairdiv
