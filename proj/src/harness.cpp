#include "lpm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lpm/baselines.hpp"
#include "lpm/digit_bank.hpp"
#include "lpm/loss.hpp"
#include "lpm/metrics.hpp"
#include "lpm/paired_env.hpp"
#include "lpm/pgm.hpp"
#include "lpm/qlearn.hpp"

namespace lpm {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Deadline {
  Clock::time_point at;
  bool enabled = false;
  bool exceeded() const { return enabled && Clock::now() > at; }
};

Deadline make_deadline(double seconds) {
  Deadline d;
  if (seconds > 0.0) {
    d.enabled = true;
    d.at = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                              std::chrono::duration<double>(seconds));
  }
  return d;
}

void run_jobs(std::vector<std::function<void()>>& jobs, int workers) {
  workers = std::max(1, std::min<int>(workers, static_cast<int>(jobs.size())));
  if (workers == 1) {
    for (auto& j : jobs) j();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) return;
        jobs[i]();
      }
    });
  }
  for (auto& t : pool) t.join();
}

std::uint64_t cell_stream(const std::string& explorer, const std::string& mode) {
  // Stable stream id per cell so runs do not depend on scheduling.
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (char c : explorer) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ULL;
  for (char c : mode) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ULL;
  return h;
}

/// Welford running standard deviation for the optional reward normalizer.
struct RunningStd {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;
  void add(double x) {
    n += 1;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  double std() const { return n > 1 ? std::sqrt(m2 / static_cast<double>(n)) : 0.0; }
};

DigitBank load_bank(const RunConfig& config) {
  if (!config.idx_images.empty() || !config.idx_labels.empty()) {
    if (config.idx_images.empty() || config.idx_labels.empty()) {
      throw std::runtime_error("mnist_convergence: both idx_images and idx_labels are required");
    }
    return load_idx(config.idx_images, config.idx_labels);
  }
  return synthetic_digit_bank(config.bank_seed);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

void get_activation(const ConfigMap& m, const std::string& key, Activation& out) {
  std::string name;
  get_value(m, key, name);
  if (name.empty()) return;
  if (name == "identity") {
    out = Activation::kIdentity;
  } else if (name == "sigmoid") {
    out = Activation::kSigmoid;
  } else if (name == "relu") {
    out = Activation::kRelu;
  } else if (name == "leaky_relu") {
    out = Activation::kLeakyRelu;
  } else {
    throw std::runtime_error("config key " + key + ": unknown activation " + name);
  }
}

}  // namespace

void RunConfig::validate() const {
  if (experiment != "mnist_convergence" && experiment != "maze_coverage" &&
      experiment != "theorem_verify") {
    throw std::invalid_argument("unknown experiment: " + experiment);
  }
  if (experiment == "theorem_verify") {
    if (instances < 1) throw std::invalid_argument("theorem_verify: instances must be >= 1");
    return;
  }
  if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
  if (total_steps <= 0) throw std::invalid_argument("total_steps must be positive");
  if (log_every <= 0) throw std::invalid_argument("log_every must be positive");
  if (explorers.empty()) throw std::invalid_argument("at least one explorer is required");
  for (const auto& e : explorers) explorer_kind_from_name(e);
  for (const auto& m : noise_modes) noise_mode_from_name(m);
  if (window <= 0) throw std::invalid_argument("window must be positive");
  if (beta < 0) throw std::invalid_argument("beta must be >= 0");
  lpm.validate();
}

RunConfig default_run_config(const std::string& experiment) {
  RunConfig c;
  c.experiment = experiment;
  if (experiment == "mnist_convergence") {
    c.explorers = {"lpm"};
    c.noise_modes = {"none"};
    c.seeds = {1, 2, 3, 4, 5};
    c.total_steps = 600;
    c.log_every = 1;
    c.lpm.update_every = 1;
    c.lpm.queue_size = 100;
    c.lpm.dynamics_hidden = {128, 128};
    c.lpm.error_hidden = {128, 64};
    // pixel observations live in [0,1]; a saturating output head plus a
    // larger optimizer damping keeps converged log-errors from chattering
    c.lpm.dynamics_output = Activation::kSigmoid;
    c.lpm.mse_floor = 1e-3;
    c.train.update_every = 1;
    c.train.hidden = {128, 128};
    c.train.output_activation = Activation::kSigmoid;
    c.train.adam_beta1 = 0.95;
    c.train.adam_epsilon = 1e-3;
    c.train.minibatches_per_update = 8;
  } else if (experiment == "maze_coverage") {
    c.explorers = {"lpm"};
    c.noise_modes = {"none", "state_noise", "action_noise"};
    c.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    c.total_steps = 30000;
    c.log_every = 100;
    c.lpm.update_every = 64;
    c.lpm.queue_size = 100;
    c.lpm.dynamics_hidden = {64, 64};
    c.lpm.error_hidden = {64, 32};
    c.lpm.dynamics_output = Activation::kSigmoid;
    c.lpm.mse_floor = 1e-3;
    c.train.update_every = 64;
    c.train.hidden = {64, 64};
    c.train.output_activation = Activation::kSigmoid;
    c.train.adam_beta1 = 0.95;
    c.train.adam_epsilon = 1e-3;
  } else if (experiment == "theorem_verify") {
    c.seeds = {1};
    c.total_steps = 1;
  } else {
    throw std::invalid_argument("unknown experiment: " + experiment);
  }
  return c;
}

RunConfig make_run_config(const std::string& experiment, const ConfigMap& file_values,
                          const ConfigMap& cli_overrides) {
  RunConfig c = default_run_config(experiment);
  for (const ConfigMap* m : {&file_values, &cli_overrides}) {
    get_value(*m, "explorers", c.explorers);
    get_value(*m, "noise_modes", c.noise_modes);
    get_value(*m, "seeds", c.seeds);
    get_value(*m, "total_steps", c.total_steps);
    get_value(*m, "out_dir", c.out_dir);
    get_value(*m, "log_every", c.log_every);
    get_value(*m, "max_wall_seconds", c.max_wall_seconds);
    get_value(*m, "parallel_cells", c.parallel_cells);
    get_value(*m, "debug_frames", c.debug_frames);

    get_value(*m, "lpm.update_every", c.lpm.update_every);
    get_value(*m, "lpm.queue_size", c.lpm.queue_size);
    get_value(*m, "lpm.batch_size", c.lpm.batch_size);
    get_value(*m, "lpm.epochs_per_update", c.lpm.epochs_per_update);
    get_value(*m, "lpm.dynamics_minibatches_per_update", c.lpm.dynamics_minibatches_per_update);
    get_value(*m, "lpm.learning_rate", c.lpm.learning_rate);
    get_value(*m, "lpm.mse_floor", c.lpm.mse_floor);
    get_value(*m, "lpm.buffer_capacity", c.lpm.buffer_capacity);
    get_value(*m, "lpm.dynamics_hidden", c.lpm.dynamics_hidden);
    get_value(*m, "lpm.error_hidden", c.lpm.error_hidden);
    get_activation(*m, "lpm.dynamics_output", c.lpm.dynamics_output);
    get_activation(*m, "lpm.hidden_activation", c.lpm.hidden_activation);

    get_value(*m, "train.learning_rate", c.train.learning_rate);
    get_value(*m, "train.adam_beta1", c.train.adam_beta1);
    get_value(*m, "train.adam_epsilon", c.train.adam_epsilon);
    get_value(*m, "train.batch_size", c.train.batch_size);
    get_value(*m, "train.minibatches_per_update", c.train.minibatches_per_update);
    get_value(*m, "train.update_every", c.train.update_every);
    get_value(*m, "train.buffer_capacity", c.train.buffer_capacity);
    get_value(*m, "train.hidden", c.train.hidden);
    get_activation(*m, "train.output_activation", c.train.output_activation);
    get_activation(*m, "train.hidden_activation", c.train.hidden_activation);

    get_value(*m, "maze.room_w", c.maze.room_w);
    get_value(*m, "maze.room_h", c.maze.room_h);
    get_value(*m, "maze.view_cells", c.maze.view_cells);
    get_value(*m, "maze.pixels_per_cell", c.maze.pixels_per_cell);
    get_value(*m, "maze.noise_bank_size", c.maze.noise_bank_size);
    get_value(*m, "maze.texture_seed", c.maze.texture_seed);

    get_value(*m, "agent.alpha", c.agent_alpha);
    get_value(*m, "agent.gamma", c.agent_gamma);
    get_value(*m, "agent.beta", c.beta);
    get_value(*m, "agent.eps_start", c.eps_start);
    get_value(*m, "agent.eps_end", c.eps_end);
    get_value(*m, "agent.eps_decay_frac", c.eps_decay_frac);
    get_value(*m, "agent.normalize_intrinsic", c.normalize_intrinsic);

    get_value(*m, "mnist.idx_images", c.idx_images);
    get_value(*m, "mnist.idx_labels", c.idx_labels);
    get_value(*m, "mnist.bank_seed", c.bank_seed);

    get_value(*m, "convergence.window", c.window);
    get_value(*m, "convergence.threshold", c.threshold);

    get_value(*m, "oracle.instances", c.instances);
    get_value(*m, "oracle.seed", c.oracle_seed);
    get_value(*m, "oracle.inject_corruption", c.inject_corruption);
  }
  // Mirror the shared learning-rate/batch settings into the LPM config so
  // every explorer trains under the same optimizer budget.
  c.lpm.learning_rate = c.train.learning_rate;
  c.lpm.adam_beta1 = c.train.adam_beta1;
  c.lpm.adam_epsilon = c.train.adam_epsilon;
  c.lpm.batch_size = c.train.batch_size;
  c.lpm.buffer_capacity = c.train.buffer_capacity;
  c.lpm.dynamics_minibatches_per_update = c.train.minibatches_per_update;
  for (const ConfigMap* m : {&file_values, &cli_overrides}) {
    get_value(*m, "lpm.learning_rate", c.lpm.learning_rate);
    get_value(*m, "lpm.adam_epsilon", c.lpm.adam_epsilon);
    get_value(*m, "lpm.batch_size", c.lpm.batch_size);
    get_value(*m, "lpm.buffer_capacity", c.lpm.buffer_capacity);
    get_value(*m, "lpm.dynamics_minibatches_per_update", c.lpm.dynamics_minibatches_per_update);
  }
  c.validate();
  return c;
}

// ------------------------------------------------------------------ mnist

namespace {

struct MnistRun {
  std::string explorer;
  std::uint64_t seed = 0;
  std::vector<double> r_det, r_stoch;
  std::vector<double> eps_det, eps_stoch;
  bool partial = false;
  double wall_ms = 0.0;
};

double explorer_epsilon(const Explorer& e, const Eigen::VectorXd& obs_next,
                        const Eigen::VectorXd* prediction) {
  if (prediction == nullptr) return std::numeric_limits<double>::quiet_NaN();
  return log_mse(obs_next, *prediction);
}

void run_mnist_cell(const RunConfig& config, const DigitBank& bank, const std::string& kind_name,
                    std::uint64_t seed, const Deadline& deadline, MnistRun& out) {
  const auto start = Clock::now();
  out.explorer = kind_name;
  out.seed = seed;

  PairedTransitionEnv env(bank);
  env.reset(seed);
  const int obs_dim = env.observation_dim();

  const ExplorerKind kind = explorer_kind_from_name(kind_name);
  Rng root(seed);
  auto explorer = make_explorer(kind, obs_dim, env.action_count(), config.lpm, config.train,
                                root.derive(cell_stream(kind_name, "mnist")));

  auto* as_lpm = dynamic_cast<LpmExplorer*>(explorer.get());
  auto* as_pe = dynamic_cast<PeCuriosity*>(explorer.get());
  auto* as_ama = dynamic_cast<AmaExplorer*>(explorer.get());

  out.r_det.reserve(config.total_steps);
  out.r_stoch.reserve(config.total_steps);

  for (std::int64_t t = 1; t <= config.total_steps; ++t) {
    if ((t & 0xFF) == 0 && deadline.exceeded()) {
      out.partial = true;
      break;
    }
    // deterministic branch
    {
      const Eigen::VectorXd& o = env.anchor(0);
      const StepResult sr = env.step(PairedTransitionEnv::kVisitDeterministic);
      const double r = explorer->observe(o, 0, sr.observation);
      out.r_det.push_back(r);
      double eps = std::numeric_limits<double>::quiet_NaN();
      if (as_lpm) {
        eps = as_lpm->state().last_epsilon();
      } else if (as_pe) {
        eps = log_mse(sr.observation, as_pe->model().forward(encode_obs_action(o, 0, 2)));
      } else if (as_ama) {
        eps = log_mse(sr.observation, as_ama->predict_mean(o, 0));
      }
      out.eps_det.push_back(eps);
    }
    // stochastic branch
    {
      const Eigen::VectorXd& o = env.anchor(1);
      const StepResult sr = env.step(PairedTransitionEnv::kVisitStochastic);
      const double r = explorer->observe(o, 1, sr.observation);
      out.r_stoch.push_back(r);
      double eps = std::numeric_limits<double>::quiet_NaN();
      if (as_lpm) {
        eps = as_lpm->state().last_epsilon();
      } else if (as_pe) {
        eps = log_mse(sr.observation, as_pe->model().forward(encode_obs_action(o, 1, 2)));
      } else if (as_ama) {
        eps = log_mse(sr.observation, as_ama->predict_mean(o, 1));
      }
      out.eps_stoch.push_back(eps);
    }
    // one shared training round per interleaved step
    explorer->update();
  }
  out.wall_ms =
      std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

ExperimentResult run_mnist_convergence(const RunConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);
  const Deadline deadline = make_deadline(config.max_wall_seconds);
  const DigitBank bank = load_bank(config);
  if (!bank.complete()) {
    throw std::runtime_error("mnist_convergence: digit bank is missing classes");
  }

  std::vector<MnistRun> runs(config.explorers.size() * config.seeds.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t e = 0; e < config.explorers.size(); ++e) {
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      const std::size_t slot = e * config.seeds.size() + s;
      jobs.push_back([&, e, s, slot] {
        run_mnist_cell(config, bank, config.explorers[e], config.seeds[s], deadline, runs[slot]);
      });
    }
  }
  run_jobs(jobs, config.parallel_cells);

  if (config.debug_frames) {
    fs::create_directories(fs::path(config.out_dir) / "frames");
    PairedTransitionEnv env(bank);
    env.reset(config.seeds.front());
    write_pgm_file(env.anchor(0), DigitBank::kRows, DigitBank::kCols,
                   (fs::path(config.out_dir) / "frames" / "anchor_det.pgm").string());
    write_pgm_file(env.anchor(1), DigitBank::kRows, DigitBank::kCols,
                   (fs::path(config.out_dir) / "frames" / "anchor_stoch.pgm").string());
    for (int i = 0; i < 4; ++i) {
      const auto sr = env.step(PairedTransitionEnv::kVisitStochastic);
      write_pgm_file(sr.observation, DigitBank::kRows, DigitBank::kCols,
                     (fs::path(config.out_dir) / "frames" / ("stoch_" + std::to_string(i) + ".pgm"))
                         .string());
    }
  }

  ExperimentResult result;
  result.metrics_path = (fs::path(config.out_dir) / "metrics.csv").string();
  result.summary_path = (fs::path(config.out_dir) / "summary.csv").string();

  auto metrics = open_out(result.metrics_path);
  metrics << "# schema=mnist-convergence-v1\n";
  metrics << "seed,step,branch,r_int,r_ext,epsilon,explorer\n";
  for (const auto& run : runs) {
    for (std::size_t i = 0; i < run.r_det.size(); ++i) {
      const auto step = static_cast<std::int64_t>(i) + 1;
      if (step % config.log_every != 0 && step != config.total_steps) continue;
      metrics << run.seed << ',' << step << ",det," << format_double(run.r_det[i]) << ",0,"
              << format_double(run.eps_det[i]) << ',' << run.explorer << '\n';
      metrics << run.seed << ',' << step << ",stoch," << format_double(run.r_stoch[i]) << ",0,"
              << format_double(run.eps_stoch[i]) << ',' << run.explorer << '\n';
    }
  }
  metrics.close();

  auto summary = open_out(result.summary_path);
  summary << "# schema=mnist-convergence-summary-v1\n";
  summary << "explorer,branch,seed_count,converged_count,crossing_step_mean,crossing_step_std,"
             "tail_windowed_abs_mean,partial,wall_ms\n";
  for (const auto& name : config.explorers) {
    for (const std::string branch : {"det", "stoch"}) {
      std::vector<double> crossings;
      std::vector<double> tails;
      std::vector<double> walls;
      int converged = 0;
      bool partial = false;
      for (const auto& run : runs) {
        if (run.explorer != name) continue;
        const auto& trace = branch == "det" ? run.r_det : run.r_stoch;
        const auto crossing = convergence_crossing_step(trace, config.window, config.threshold);
        if (crossing >= 0) {
          converged += 1;
          crossings.push_back(static_cast<double>(crossing));
        }
        const auto wm = windowed_abs_mean(trace, config.window);
        tails.push_back(wm.empty() ? 0.0 : wm.back());
        walls.push_back(run.wall_ms);
        partial = partial || run.partial;
      }
      result.partial = result.partial || partial;
      summary << name << ',' << branch << ',' << config.seeds.size() << ',' << converged << ','
              << format_double(mean_of(crossings)) << ',' << format_double(stddev_of(crossings))
              << ',' << format_double(mean_of(tails)) << ',' << (partial ? 1 : 0) << ','
              << format_double(mean_of(walls)) << '\n';
    }
  }
  summary.close();
  return result;
}

// ------------------------------------------------------------------ maze

namespace {

struct MazeLogRow {
  std::int64_t step = 0;
  double r_int = 0.0;
  double epsilon = 0.0;
  int coverage_cells = 0;
  int coverage_posedirs = 0;
};

struct MazeRun {
  std::string explorer;
  std::string noise_mode;
  std::uint64_t seed = 0;
  std::vector<MazeLogRow> rows;
  int final_cells = 0;
  int final_posedirs = 0;
  bool partial = false;
  double wall_ms = 0.0;
};

void run_maze_cell(const RunConfig& config, const std::string& kind_name,
                   const std::string& mode_name, std::uint64_t seed, const Deadline& deadline,
                   MazeRun& out) {
  const auto start = Clock::now();
  out.explorer = kind_name;
  out.noise_mode = mode_name;
  out.seed = seed;

  MazeConfig maze_cfg = config.maze;
  maze_cfg.noise_mode = noise_mode_from_name(mode_name);
  GridMazeEnv env(maze_cfg);
  StepResult sr = env.reset(seed);
  const int obs_dim = env.observation_dim();

  const ExplorerKind kind = explorer_kind_from_name(kind_name);
  Rng root(seed);
  auto explorer = make_explorer(kind, obs_dim, env.action_count(), config.lpm, config.train,
                                root.derive(cell_stream(kind_name, mode_name)));
  Rng agent_rng = root.derive(cell_stream(kind_name, mode_name) ^ 0xA6A6A6A6ULL);

  QTable q(env.state_count(), env.action_count(), config.agent_alpha, config.agent_gamma);
  EpsilonSchedule schedule{config.eps_start, config.eps_end,
                           std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                         config.eps_decay_frac *
                                                         static_cast<double>(config.total_steps)))};

  auto* as_lpm = dynamic_cast<LpmExplorer*>(explorer.get());
  RunningStd norm;

  std::vector<char> seen_cells(env.cell_count(), 0);
  std::vector<char> seen_posedirs(env.state_count(), 0);
  int cells = 0, posedirs = 0;
  auto touch = [&](int latent) {
    if (!seen_posedirs[latent]) {
      seen_posedirs[latent] = 1;
      posedirs += 1;
    }
    const int cell = env.latent_cell(latent);
    if (!seen_cells[cell]) {
      seen_cells[cell] = 1;
      cells += 1;
    }
  };
  touch(sr.latent_state_id);

  Eigen::VectorXd obs = sr.observation;
  int state = sr.latent_state_id;

  for (std::int64_t t = 1; t <= config.total_steps; ++t) {
    if ((t & 0xFF) == 0 && deadline.exceeded()) {
      out.partial = true;
      break;
    }
    const double eps_greedy = schedule.value(t - 1);
    const int action = select_action(q, state, eps_greedy, agent_rng);
    const StepResult next = env.step(action);
    const double r_int = explorer->observe(obs, action, next.observation);
    explorer->update();

    double r_used = r_int;
    if (config.normalize_intrinsic) {
      norm.add(r_int);
      r_used = r_int / std::max(norm.std(), 1e-8);
    }
    q.update(state, action, combined_reward(next.extrinsic_reward, r_used, config.beta),
             next.latent_state_id, next.done);

    touch(next.latent_state_id);
    obs = next.observation;
    state = next.latent_state_id;

    if (t % config.log_every == 0 || t == config.total_steps) {
      const double eps_log =
          as_lpm ? as_lpm->state().last_epsilon() : std::numeric_limits<double>::quiet_NaN();
      out.rows.push_back({t, r_int, eps_log, cells, posedirs});
    }
  }
  out.final_cells = cells;
  out.final_posedirs = posedirs;
  out.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

ExperimentResult run_maze_coverage(const RunConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);
  const Deadline deadline = make_deadline(config.max_wall_seconds);

  // The random-policy floor cell is always part of the study.
  std::vector<std::string> explorers = config.explorers;
  if (std::find(explorers.begin(), explorers.end(), "random") == explorers.end()) {
    explorers.push_back("random");
  }

  struct Cell {
    std::string explorer;
    std::string mode;
  };
  std::vector<Cell> cells;
  for (const auto& e : explorers) {
    for (const auto& m : config.noise_modes) cells.push_back({e, m});
  }

  std::vector<MazeRun> runs(cells.size() * config.seeds.size());
  std::vector<std::function<void()>> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t s = 0; s < config.seeds.size(); ++s) {
      const std::size_t slot = c * config.seeds.size() + s;
      jobs.push_back([&, c, s, slot] {
        run_maze_cell(config, cells[c].explorer, cells[c].mode, config.seeds[s], deadline,
                      runs[slot]);
      });
    }
  }
  run_jobs(jobs, config.parallel_cells);

  if (config.debug_frames) {
    fs::create_directories(fs::path(config.out_dir) / "frames");
    MazeConfig maze_cfg = config.maze;
    maze_cfg.noise_mode = noise_mode_from_name(config.noise_modes.front());
    GridMazeEnv env(maze_cfg);
    StepResult sr = env.reset(config.seeds.front());
    const int side = maze_cfg.view_cells * maze_cfg.pixels_per_cell;
    write_pgm_file(sr.observation, side, side,
                   (fs::path(config.out_dir) / "frames" / "frame_0.pgm").string());
    for (int i = 1; i <= 8; ++i) {
      sr = env.step(i % 4);
      write_pgm_file(sr.observation, side, side,
                     (fs::path(config.out_dir) / "frames" / ("frame_" + std::to_string(i) + ".pgm"))
                         .string());
    }
  }

  ExperimentResult result;
  result.metrics_path = (fs::path(config.out_dir) / "metrics.csv").string();
  result.summary_path = (fs::path(config.out_dir) / "summary.csv").string();

  auto metrics = open_out(result.metrics_path);
  metrics << "# schema=maze-coverage-v1\n";
  metrics << "seed,step,r_int,r_ext,epsilon,coverage_cells,coverage_posedirs,explorer,noise_mode\n";
  for (const auto& run : runs) {
    for (const auto& row : run.rows) {
      metrics << run.seed << ',' << row.step << ',' << format_double(row.r_int) << ",0,"
              << format_double(row.epsilon) << ',' << row.coverage_cells << ','
              << row.coverage_posedirs << ',' << run.explorer << ',' << run.noise_mode << '\n';
    }
  }
  metrics.close();

  auto summary = open_out(result.summary_path);
  summary << "# schema=maze-coverage-summary-v1\n";
  summary << "explorer,noise_mode,seed_count,final_cells_mean,final_cells_std,"
             "final_posedirs_mean,final_posedirs_std,partial,wall_ms\n";
  for (const auto& cell : cells) {
    std::vector<double> cells_v, posedirs_v, walls;
    bool partial = false;
    for (const auto& run : runs) {
      if (run.explorer != cell.explorer || run.noise_mode != cell.mode) continue;
      cells_v.push_back(static_cast<double>(run.final_cells));
      posedirs_v.push_back(static_cast<double>(run.final_posedirs));
      walls.push_back(run.wall_ms);
      partial = partial || run.partial;
    }
    result.partial = result.partial || partial;
    summary << cell.explorer << ',' << cell.mode << ',' << config.seeds.size() << ','
            << format_double(mean_of(cells_v)) << ',' << format_double(stddev_of(cells_v)) << ','
            << format_double(mean_of(posedirs_v)) << ',' << format_double(stddev_of(posedirs_v))
            << ',' << (partial ? 1 : 0) << ',' << format_double(mean_of(walls)) << '\n';
  }
  summary.close();
  return result;
}

// ------------------------------------------------------------------ theorems

ExperimentResult run_theorem_verify(const RunConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);

  TheoremOptions options;
  options.corrupt_monotone_check = config.inject_corruption;
  Rng rng(config.oracle_seed);
  const TheoremSummary summary = check_theorems(config.instances, rng, options);

  ExperimentResult result;
  result.metrics_path = (fs::path(config.out_dir) / "theorem_checks.csv").string();
  result.summary_path = result.metrics_path;

  auto csv = open_out(result.metrics_path);
  csv << "# schema=theorem-verify-v1\n";
  csv << "check,instances,failures,margin\n";
  csv << "kl_identity," << summary.instances << ',' << summary.kl_identity_failures << ','
      << format_double(summary.max_kl_identity_gap) << '\n';
  csv << "monotone_bound," << summary.instances << ',' << summary.monotone_bound_failures << ','
      << format_double(summary.min_monotone_margin) << '\n';
  csv << "zero_equivalence," << summary.instances << ',' << summary.zero_equivalence_failures
      << ",0\n";
  csv << "mle_dominance," << summary.instances << ',' << summary.mle_dominance_failures << ','
      << format_double(summary.min_mle_dominance_margin) << '\n';
  csv << "mle_pointwise_nonnegative," << summary.instances << ','
      << summary.mle_negative_pointwise << ",0\n";
  csv << "pointwise_counterexample_found," << summary.submaximal_instances << ','
      << (summary.t2_counterexamples > 0 ? 0 : 1) << ',' << summary.t2_counterexamples << '\n';
  csv.close();

  std::ostringstream table;
  table << "theorem verification over " << summary.instances << " grids ("
        << format_double(summary.seconds) << " s)\n"
        << "  kl identity        : " << (summary.kl_identity_failures == 0 ? "pass" : "FAIL")
        << " (max gap " << format_double(summary.max_kl_identity_gap) << ")\n"
        << "  monotone bound     : " << (summary.monotone_bound_failures == 0 ? "pass" : "FAIL")
        << " (min margin " << format_double(summary.min_monotone_margin) << ")\n"
        << "  zero equivalence   : " << (summary.zero_equivalence_failures == 0 ? "pass" : "FAIL")
        << '\n'
        << "  mle dominance      : " << (summary.mle_dominance_failures == 0 ? "pass" : "FAIL")
        << " (min margin " << format_double(summary.min_mle_dominance_margin) << ")\n"
        << "  mle pointwise >= 0 : " << (summary.mle_negative_pointwise == 0 ? "pass" : "FAIL")
        << '\n'
        << "  pointwise < 0, IG > 0 under submaximal theta_D: " << summary.t2_counterexamples
        << " instance(s) across " << summary.submaximal_instances << " eligible\n";
  std::cout << table.str();

  if (!summary.all_pass()) {
    int i = 0;
    for (const auto& grid : summary.counterexample_grids) {
      auto out = open_out(
          (fs::path(config.out_dir) / ("counterexample_" + std::to_string(i++) + ".json"))
              .string());
      out << grid_to_json(grid);
      if (i >= 16) break;  // enough for a bug report
    }
    result.exit_code = 1;
  }
  return result;
}

ExperimentResult run_experiment(const RunConfig& config) {
  if (config.experiment == "mnist_convergence") return run_mnist_convergence(config);
  if (config.experiment == "maze_coverage") return run_maze_coverage(config);
  if (config.experiment == "theorem_verify") return run_theorem_verify(config);
  throw std::invalid_argument("unknown experiment: " + config.experiment);
}

// ------------------------------------------------------------------ csv

MetricsTable read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open metrics file " + path);
  MetricsTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (table.columns.empty()) {
      table.columns = std::move(fields);
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  return table;
}

int MetricsTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return static_cast<int>(i);
  }
  throw std::out_of_range("metrics column not found: " + name);
}

std::vector<double> MetricsTable::numeric_column(const std::string& name) const {
  const int idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(std::stod(row.at(idx)));
  return out;
}

}  // namespace lpm
