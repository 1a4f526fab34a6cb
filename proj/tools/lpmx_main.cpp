// lpmx CLI: seeded experiment runner with CSV output.
//
//   lpmx run <experiment> [--config file] [--seed-list 1,2,3] [--out dir] ...
//
// Experiments: mnist_convergence, maze_coverage, theorem_verify.
// Config files use flat dotted keys (see configs/ for annotated examples);
// command-line flags override file values.

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lpm/harness.hpp"

int main(int argc, char** argv) {
  CLI::App app{"intrinsic-reward exploration experiment runner"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment and write metric CSVs");
  std::string experiment;
  run->add_option("experiment", experiment, "mnist_convergence | maze_coverage | theorem_verify")
      ->required();

  std::string config_path;
  run->add_option("--config", config_path, "flat key=value config file");

  std::string seed_list, out_dir, explorer, noise_mode;
  std::int64_t steps = -1;
  std::int64_t log_every = -1;
  double max_wall = -1.0;
  int instances = -1;
  int parallel = -1;
  bool debug_frames = false;
  bool inject_corruption = false;
  run->add_option("--seed-list", seed_list, "comma-separated seeds");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--explorer", explorer, "lpm | pe | rnd | ensemble | ama | random");
  run->add_option("--noise-mode", noise_mode, "none | state_noise | action_noise");
  run->add_option("--steps", steps, "environment steps per run");
  run->add_option("--log-every", log_every, "metric row cadence in steps");
  run->add_option("--max-wall-s", max_wall, "wall-clock budget in seconds (0 = none)");
  run->add_option("--instances", instances, "random grids for theorem_verify");
  run->add_option("--parallel-cells", parallel, "worker threads across (explorer, mode, seed)");
  run->add_flag("--debug-frames", debug_frames, "dump a few observations as PGM");
  run->add_flag("--inject-corruption", inject_corruption)->group("");  // self-test hook

  CLI11_PARSE(app, argc, argv);

  try {
    lpm::ConfigMap file_values;
    if (!config_path.empty()) file_values = lpm::parse_config_file(config_path);

    lpm::ConfigMap cli;
    if (!seed_list.empty()) cli["seeds"] = seed_list;
    if (!out_dir.empty()) cli["out_dir"] = out_dir;
    if (!explorer.empty()) cli["explorers"] = explorer;
    if (!noise_mode.empty()) cli["noise_modes"] = noise_mode;
    if (steps >= 0) cli["total_steps"] = std::to_string(steps);
    if (log_every >= 0) cli["log_every"] = std::to_string(log_every);
    if (max_wall >= 0) cli["max_wall_seconds"] = std::to_string(max_wall);
    if (instances >= 0) cli["oracle.instances"] = std::to_string(instances);
    if (parallel >= 0) cli["parallel_cells"] = std::to_string(parallel);
    if (debug_frames) cli["debug_frames"] = "true";
    if (inject_corruption) cli["oracle.inject_corruption"] = "true";

    const lpm::RunConfig config = lpm::make_run_config(experiment, file_values, cli);
    const lpm::ExperimentResult result = lpm::run_experiment(config);
    if (result.partial) {
      std::cerr << "warning: wall-clock budget hit, results flagged partial\n";
    }
    std::cout << "metrics: " << result.metrics_path << "\n";
    if (result.summary_path != result.metrics_path) {
      std::cout << "summary: " << result.summary_path << "\n";
    }
    return result.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
