#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "fairdiv/coreset.hpp"
#include "fairdiv/dataset_io.hpp"
#include "fairdiv/experiment.hpp"
#include "fairdiv/fdm_nn.hpp"
#include "fairdiv/solvers.hpp"
#include "fairdiv/synthetic.hpp"

namespace {

using namespace fairdiv;

struct DataFlags {
  std::string data;
  std::string format = "auto";
  std::string metric = "euclidean";
  int time_colors = 0;
  std::uint64_t seed = 1;
};

void add_data_flags(CLI::App* cmd, DataFlags& flags) {
  cmd->add_option("--data,--dataset", flags.data, "input file or synth:// spec")->required();
  cmd->add_option("--format", flags.format, "jsonl|csv|auto (default auto)");
  cmd->add_option("--metric", flags.metric, "euclidean|angular");
  cmd->add_option("--time-colors", flags.time_colors,
                  "bucket timestamped records into this many colors");
  cmd->add_option("--seed", flags.seed, "seed for synth:// datasets");
}

int run_gen(const SyntheticSpec& spec, const std::string& out_path) {
  const std::vector<RawRecord> records = make_clustered(spec);
  std::ofstream out(out_path);
  if (!out) throw InputError("cannot write '" + out_path + "'");
  write_records_jsonl(out, records);
  std::cout << "wrote " << records.size() << " records to " << out_path << '\n';
  return 0;
}

int run_coreset(const DataFlags& flags, const std::string& measure_name,
                const std::string& quota_spec, const std::string& out_path) {
  const ColoredDataset ds = load_dataset(flags.data, flags.format, parse_metric(flags.metric),
                                         flags.time_colors, flags.seed);
  const DiversityMeasure measure = parse_measure(measure_name);
  const Quota q = parse_quota(quota_spec, ds.num_colors());
  const ColoredDataset compact = coreset_union(ds, q, measure);
  if (out_path.empty()) {
    write_points_jsonl(std::cout, compact.points());
  } else {
    write_points_jsonl(out_path, compact.points());
  }
  std::cerr << "core-set keeps " << compact.size() << " of " << ds.size() << " points\n";
  return 0;
}

int run_solve(const DataFlags& flags, const std::string& measure_name,
              const std::string& quota_spec, const std::string& approach_name, double eps,
              bool use_coresets, const std::string& out_path) {
  const ColoredDataset ds = load_dataset(flags.data, flags.format, parse_metric(flags.metric),
                                         flags.time_colors, flags.seed);
  const DiversityMeasure measure = parse_measure(measure_name);
  const Quota q = parse_quota(quota_spec, ds.num_colors());
  const BallApproach approach = parse_approach(approach_name);

  const ColoredDataset* target = &ds;
  std::optional<ColoredDataset> compact;
  if (use_coresets) {
    compact.emplace(coreset_union(ds, q, measure));
    target = &*compact;
  }
  const Selection sel = solve_fdm(*target, q, measure, approach, eps);
  std::cout << "measure=" << to_string(measure) << '\n';
  std::cout << "value=" << (q.total() >= 2 ? diversity(*target, sel, measure) : 0.0) << '\n';
  std::cout << "ids=";
  for (std::size_t i = 0; i < sel.ids.size(); ++i) {
    if (i) std::cout << ',';
    std::cout << sel.ids[i];
  }
  std::cout << '\n';
  if (!out_path.empty()) {
    std::vector<Point> chosen;
    for (PointId id : sel.ids) chosen.push_back(target->point(target->index_of(id)));
    write_points_jsonl(out_path, chosen);
  }
  return 0;
}

int run_experiment_cmd(const ExperimentConfig& cfg, const std::string& dm_out) {
  const Report report = run_experiment(cfg);
  print_report(std::cout, report, cfg.timing);
  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out);
    if (!out) throw InputError("cannot write '" + cfg.out + "'");
    write_report_csv(out, report, cfg.timing);
  }
  if (!dm_out.empty()) {
    std::ofstream out(dm_out);
    if (!out) throw InputError("cannot write '" + dm_out + "'");
    write_dm_csv(out, report);
  }
  return 0;
}

int run_report(const std::string& in_path) {
  std::ifstream in(in_path);
  if (!in) throw InputError("cannot open '" + in_path + "'");
  std::vector<std::vector<std::string>> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    table.push_back(std::move(cells));
  }
  if (table.empty()) throw InputError("'" + in_path + "' is empty");
  std::vector<std::size_t> widths;
  for (const auto& row : table) {
    if (row.size() > widths.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::cout << (c ? "  " : "");
      std::cout << row[c] << std::string(widths[c] - row[c].size(), ' ');
    }
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fair diversity maximization over colored point sets"};
  app.require_subcommand(1);

  SyntheticSpec gen_spec;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "generate clustered synthetic data");
  gen->add_option("--n", gen_spec.n, "number of points");
  gen->add_option("--dim", gen_spec.dim, "dimensions");
  gen->add_option("--m", gen_spec.m, "number of colors");
  gen->add_option("--clusters", gen_spec.clusters, "clusters per color");
  gen->add_option("--spread", gen_spec.spread, "within-cluster standard deviation");
  gen->add_option("--box", gen_spec.box, "cluster centers land in [-box, box]^dim");
  gen->add_option("--seed", gen_spec.seed, "rng seed");
  gen->add_flag("--timestamps", gen_spec.timestamps, "emit timestamps instead of colors");
  gen->add_option("--out", gen_out, "output JSONL path")->required();

  DataFlags coreset_flags;
  std::string coreset_measure = "sum_pairwise", coreset_quota, coreset_out;
  CLI::App* coreset = app.add_subcommand("coreset", "build per-color core-sets");
  add_data_flags(coreset, coreset_flags);
  coreset->add_option("--measure", coreset_measure, "min_pairwise|sum_pairwise|sum_nn");
  coreset->add_option("--quota", coreset_quota, "per-color counts, uniform:c, or ramp:c")
      ->required();
  coreset->add_option("--out", coreset_out, "output JSONL path (default stdout)");

  DataFlags solve_flags;
  std::string solve_measure = "sum_pairwise", solve_quota, solve_approach = "exhaustive";
  std::string solve_out;
  double solve_eps = 0.05;
  bool solve_use_coresets = false;
  CLI::App* solve = app.add_subcommand("solve", "solve one fair diversity instance");
  add_data_flags(solve, solve_flags);
  solve->add_option("--measure", solve_measure, "min_pairwise|sum_pairwise|sum_nn");
  solve->add_option("--quota", solve_quota, "per-color counts, uniform:c, or ramp:c")->required();
  solve->add_option("--approach", solve_approach, "exhaustive|halving (sum_nn only)");
  solve->add_option("--eps", solve_eps, "local-search improvement slack");
  solve->add_flag("--use-coresets,!--no-coresets", solve_use_coresets,
                  "solve on the core-set union instead of the full data");
  solve->add_option("--out", solve_out, "write the selected points as JSONL");

  ExperimentConfig cfg;
  std::string dm_out;
  CLI::App* experiment = app.add_subcommand("experiment", "full-vs-coreset measurement run");
  experiment->set_config("--config");
  experiment->add_option("--data,--dataset", cfg.dataset, "input file or synth:// spec");
  experiment->add_option("--format", cfg.format, "jsonl|csv|auto");
  experiment->add_option("--metric", cfg.metric, "euclidean|angular");
  experiment->add_option("--quota", cfg.quota, "per-color counts, uniform:c, or ramp:c");
  experiment->add_option("--measures", cfg.measures, "measures to run")->delimiter(',');
  experiment->add_option("--approach", cfg.approach, "exhaustive|halving");
  experiment->add_flag("--use-coresets,!--no-coresets", cfg.use_coresets,
                       "compare against core-set runs (default on)");
  experiment->add_flag("--dm-compare", cfg.dm_compare,
                       "also solve without fairness constraints");
  experiment->add_option("--time-colors", cfg.time_colors,
                         "bucket timestamped records into this many colors");
  experiment->add_option("--seed", cfg.seed, "seed for synth:// datasets");
  experiment->add_flag("--timing", cfg.timing, "fill the wall-clock columns");
  experiment->add_option("--eps", cfg.eps, "local-search improvement slack");
  experiment->add_option("--out", cfg.out, "report CSV path");
  experiment->add_option("--dm-out", dm_out, "unconstrained-comparison CSV path");

  std::string report_in;
  CLI::App* report = app.add_subcommand("report", "pretty-print a report CSV");
  report->add_option("--in", report_in, "report CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return run_gen(gen_spec, gen_out);
    if (coreset->parsed()) {
      return run_coreset(coreset_flags, coreset_measure, coreset_quota, coreset_out);
    }
    if (solve->parsed()) {
      return run_solve(solve_flags, solve_measure, solve_quota, solve_approach, solve_eps,
                       solve_use_coresets, solve_out);
    }
    if (experiment->parsed()) {
      if (cfg.dataset.empty()) throw InputError("experiment needs --data");
      return run_experiment_cmd(cfg, dm_out);
    }
    if (report->parsed()) return run_report(report_in);
  } catch (const BudgetError& e) {
    std::cerr << "budget refusal: " << e.what() << '\n';
    return 3;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
