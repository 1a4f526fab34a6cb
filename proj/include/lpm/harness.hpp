#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lpm/config_file.hpp"
#include "lpm/env.hpp"
#include "lpm/explorer.hpp"
#include "lpm/ig_oracle.hpp"
#include "lpm/maze_env.hpp"

namespace lpm {

/// One experiment invocation. Defaults depend on the experiment; a config
/// file overlays them and CLI flags overlay the file.
struct RunConfig {
  std::string experiment;  // mnist_convergence | maze_coverage | theorem_verify
  std::vector<std::string> explorers;
  std::vector<std::string> noise_modes;  // maze cells
  std::vector<std::uint64_t> seeds;
  std::int64_t total_steps = 0;
  std::string out_dir = "out";
  std::int64_t log_every = 1;
  double max_wall_seconds = 0.0;  // 0 = no wall-clock budget
  int parallel_cells = 4;
  bool debug_frames = false;

  LpmConfig lpm;
  TrainingConfig train;
  MazeConfig maze;

  double agent_alpha = 0.1;
  double agent_gamma = 0.99;
  double beta = 1.0;
  double eps_start = 1.0;
  double eps_end = 0.05;
  double eps_decay_frac = 0.2;  // fraction of total_steps spent decaying
  bool normalize_intrinsic = false;

  std::string idx_images;  // optional IDX dataset; synthetic bank otherwise
  std::string idx_labels;
  std::uint64_t bank_seed = 7;

  int window = 20;          // convergence window (steps)
  double threshold = 0.05;  // convergence threshold on windowed |r_int|

  int instances = 1000;  // theorem_verify
  std::uint64_t oracle_seed = 99;
  bool inject_corruption = false;  // self-test hook: forces a failing check

  void validate() const;
};

RunConfig default_run_config(const std::string& experiment);
RunConfig make_run_config(const std::string& experiment, const ConfigMap& file_values,
                          const ConfigMap& cli_overrides);

struct ExperimentResult {
  int exit_code = 0;
  bool partial = false;          // wall budget hit, results truncated
  std::string metrics_path;
  std::string summary_path;
};

/// Paired deterministic/stochastic transition scoring. Per step each
/// explorer scores one transition of each branch and then trains once.
/// metrics.csv rows: seed,step,branch,r_int,r_ext,epsilon,explorer.
ExperimentResult run_mnist_convergence(const RunConfig& config);

/// Pure-exploration maze coverage across noise conditions, one Q-learning
/// agent per (explorer, mode, seed) cell; a random-policy floor cell is
/// always included. metrics.csv rows:
/// seed,step,r_int,r_ext,epsilon,coverage_cells,coverage_posedirs,explorer,noise_mode.
ExperimentResult run_maze_coverage(const RunConfig& config);

/// Exact theorem verification; exit code 1 and serialized counterexample
/// grids on any failure.
ExperimentResult run_theorem_verify(const RunConfig& config);

ExperimentResult run_experiment(const RunConfig& config);

/// Loaded metrics row set for downstream checks (and the acceptance
/// suite's independent recomputation).
struct MetricsTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  int column_index(const std::string& name) const;
  std::vector<double> numeric_column(const std::string& name) const;
};

MetricsTable read_metrics_csv(const std::string& path);

}  // namespace lpm
