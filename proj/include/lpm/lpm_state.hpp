#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lpm/adam.hpp"
#include "lpm/mlp.hpp"
#include "lpm/replay.hpp"
#include "lpm/rng.hpp"

namespace lpm {

struct LpmConfig {
  int update_every = 1;        // environment steps between model updates (N)
  int queue_size = 100;        // error queue capacity (d)
  int batch_size = 32;
  int epochs_per_update = 1;
  int dynamics_minibatches_per_update = 4;  // budget per update for the dynamics model
  double learning_rate = 0.001;
  double adam_beta1 = 0.9;
  double adam_epsilon = 1e-8;
  double mse_floor = 1e-12;
  double intrinsic_weight = 1.0;            // beta, consumed by the agent layer
  std::int64_t buffer_capacity = 10000;     // transition buffer bound, <=0 unbounded
  std::vector<int> dynamics_hidden = {128, 128};
  std::vector<int> error_hidden = {128, 64};
  Activation hidden_activation = Activation::kRelu;
  Activation dynamics_output = Activation::kIdentity;

  void validate() const;
};

struct LpmUpdateStats {
  std::int64_t tau = 0;
  bool error_model_trained = false;
  bool dynamics_model_trained = false;
  int error_minibatches = 0;
  int dynamics_minibatches = 0;
  // Largest tau stamped on any record the error model was fit on; the
  // training-order contract requires this to stay below the new tau.
  std::int64_t error_fit_max_record_tau = -1;
};

/// Learning-progress intrinsic reward.
///
/// Two networks: a dynamics model f predicting the next observation from
/// (obs, action), and an error model g predicting f's recent log-MSE at
/// (obs, action). Because the error queue only ever holds errors measured
/// under earlier versions of f, g tracks the previous model's expected
/// error, and g(o, a) - eps(o') is the one-update improvement: positive
/// while the transition is being learned, zero once nothing is left to
/// learn -- including transitions that are pure noise.
class LpmState {
 public:
  LpmState(int obs_dim, int action_count, LpmConfig config, Rng rng);

  /// Scores one transition and records it. Returns the intrinsic reward:
  /// g(o, a) - log_mse(o_next, f(o, a)), gated to 0 until the error queue
  /// has been full once (warm-up: the first queue_size observations).
  double observe(const Eigen::VectorXd& obs, int action, const Eigen::VectorXd& obs_next);

  /// One model-update step: increments tau, fits g to the queued errors
  /// (all recorded under pre-update dynamics models), then trains f on
  /// replayed transitions. Empty buffers skip the corresponding fit.
  LpmUpdateStats update();

  double predict_error(const Eigen::VectorXd& obs, int action) const;
  Eigen::VectorXd predict_next(const Eigen::VectorXd& obs, int action) const;

  std::int64_t tau() const { return tau_; }
  double last_epsilon() const { return last_epsilon_; }
  const LpmConfig& config() const { return config_; }
  int obs_dim() const { return obs_dim_; }
  int action_count() const { return action_count_; }

  const TransitionBuffer& transitions() const { return transitions_; }
  const ErrorQueue& errors() const { return errors_; }
  const MlpModel& dynamics_model() const { return dynamics_; }
  const MlpModel& error_model() const { return error_; }
  MlpModel& dynamics_model() { return dynamics_; }
  MlpModel& error_model() { return error_; }
  const LpmUpdateStats& last_update_stats() const { return last_update_stats_; }

  /// Versioned JSON checkpoint (models, optimizer moments, buffers, tau).
  void save(std::ostream& out) const;
  static LpmState load(std::istream& in);
  void save_file(const std::string& path) const;
  static LpmState load_file(const std::string& path);

 private:
  void train_error_model();
  void train_dynamics_model();

  int obs_dim_ = 0;
  int action_count_ = 0;
  LpmConfig config_;
  Rng rng_;
  MlpModel dynamics_;
  MlpModel error_;
  AdamState dynamics_adam_;
  AdamState error_adam_;
  TransitionBuffer transitions_;
  ErrorQueue errors_;
  std::int64_t tau_ = 0;
  double last_epsilon_ = 0.0;
  LpmUpdateStats last_update_stats_;
};

/// r_ext + beta * r_int.
double combined_reward(double extrinsic, double intrinsic, double beta);

}  // namespace lpm
