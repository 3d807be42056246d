#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/fdm_nn.hpp"

namespace fairdiv {

// Flat experiment description; string fields are parsed when the run starts so
// config files and CLI flags can feed it verbatim.
struct ExperimentConfig {
  std::string dataset;       // file path or synth:// spec
  std::string format = "auto";
  std::string metric = "euclidean";
  std::string quota = "uniform:2";
  std::vector<std::string> measures = {"min_pairwise", "sum_pairwise", "sum_nn"};
  std::string approach = "exhaustive";
  bool use_coresets = true;
  bool dm_compare = false;
  int time_colors = 0;       // >0 buckets timestamped records into this many colors
  std::uint64_t seed = 1;    // feeds synth:// generation
  bool timing = false;       // timing columns stay empty unless requested
  std::string out;           // report CSV path; empty means stdout table only
  double eps = 0.05;         // local-search improvement slack
};

struct MeasureRow {
  DiversityMeasure measure = DiversityMeasure::sum_pairwise;
  Quota quota;
  std::size_t n = 0;
  int m = 0;
  double full_value = 0.0;
  double full_ms = 0.0;
  std::vector<std::size_t> histogram;  // per-color counts of the fair selection

  bool has_coreset = false;
  double coreset_value = 0.0;
  double coreset_ms = 0.0;       // solve time on the core-set union
  double coreset_build_ms = 0.0;
  double loss_pct = 0.0;         // (full - coreset) / full * 100, negative allowed
  double speedup = 0.0;          // full_ms / coreset_ms
  std::size_t coreset_size = 0;

  bool has_dm = false;
  double dm_value = 0.0;
  double dm_loss_pct = 0.0;      // (dm - full) / dm * 100
  std::vector<std::size_t> dm_histogram;
};

struct Report {
  std::vector<MeasureRow> rows;
};

// Quota spec: explicit "2,4,6,8", "uniform:c", or "ramp:c" (k_i = c * (i+1)).
Quota parse_quota(const std::string& spec, int m);

// Loads a dataset from a file path or a synth:// spec. Timestamped records
// need time_colors >= 1; explicitly colored records refuse a time_colors
// override. seed replaces the synth:// seed.
ColoredDataset load_dataset(const std::string& dataset, const std::string& format,
                            MetricKind metric, int time_colors, std::uint64_t seed);

// Fair solve dispatch: fair greedy for min-pairwise, local search for
// sum-pairwise, the ball solver for sum-NN.
Selection solve_fdm(const ColoredDataset& ds, const Quota& q, DiversityMeasure measure,
                    BallApproach approach, double eps = 0.05);

// Per-color core-sets of one dataset (measure-appropriate parameter: k_i for
// the pairwise measures, total k for sum-NN), merged back into a dataset.
// Builds run as independent per-color jobs.
ColoredDataset coreset_union(const ColoredDataset& ds, const Quota& q, DiversityMeasure measure);

// Composable variant: per partition, per color, with the same global
// parameters; partitions must agree on metric, m, and dimension, and stay
// disjoint by id.
ColoredDataset composable_coreset(std::span<const ColoredDataset> partitions, const Quota& q,
                                  DiversityMeasure measure);

Report run_experiment(const ExperimentConfig& cfg);

// Fixed column set: measure,quota,n,m,full_value,coreset_value,loss_pct,
// full_ms,coreset_ms,speedup,coreset_size. Skipped work and disabled timing
// leave their cells empty so reports stay byte-stable run to run.
void write_report_csv(std::ostream& out, const Report& report, bool timing);
void write_dm_csv(std::ostream& out, const Report& report);
void print_report(std::ostream& out, const Report& report, bool timing);

}  // namespace fairdiv
