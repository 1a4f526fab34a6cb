#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>

#include "lpm/lpm_state.hpp"
#include "lpm/rng.hpp"

namespace lpm {

/// Any intrinsic-reward producer. observe scores one transition and may
/// record it; update is called once per environment step and each
/// implementation applies its own training cadence internally.
class Explorer {
 public:
  virtual ~Explorer() = default;
  virtual double observe(const Eigen::VectorXd& obs, int action,
                         const Eigen::VectorXd& obs_next) = 0;
  virtual void update() = 0;
  virtual const std::string& name() const = 0;
};

/// Training budget shared across explorers so reward comparisons hold the
/// optimization constant: same optimizer settings, same per-update
/// minibatch count, same cadence.
struct TrainingConfig {
  double learning_rate = 0.001;
  double adam_beta1 = 0.9;
  double adam_epsilon = 1e-8;
  int batch_size = 32;
  int minibatches_per_update = 4;
  int update_every = 1;  // environment steps between training rounds (N)
  std::int64_t buffer_capacity = 10000;
  std::vector<int> hidden = {128, 128};
  Activation hidden_activation = Activation::kRelu;
  Activation output_activation = Activation::kIdentity;

  AdamConfig adam() const { return {learning_rate, adam_beta1, 0.999, adam_epsilon}; }
};

class LpmExplorer : public Explorer {
 public:
  LpmExplorer(int obs_dim, int action_count, LpmConfig config, Rng rng)
      : state_(obs_dim, action_count, config, rng) {}

  double observe(const Eigen::VectorXd& obs, int action,
                 const Eigen::VectorXd& obs_next) override {
    return state_.observe(obs, action, obs_next);
  }

  void update() override {
    step_ += 1;
    if (step_ % state_.config().update_every == 0) state_.update();
  }

  const std::string& name() const override { return name_; }

  LpmState& state() { return state_; }
  const LpmState& state() const { return state_; }
  std::int64_t steps_seen() const { return step_; }

 private:
  LpmState state_;
  std::int64_t step_ = 0;
  std::string name_ = "lpm";
};

enum class ExplorerKind { kLpm, kPe, kRnd, kEnsemble, kAma, kRandom };

const char* explorer_kind_name(ExplorerKind kind);
ExplorerKind explorer_kind_from_name(const std::string& name);

/// Factory used by the experiment harness. `random` yields a null scorer
/// (always 0 reward), the pure-exploration floor reference.
std::unique_ptr<Explorer> make_explorer(ExplorerKind kind, int obs_dim, int action_count,
                                        const LpmConfig& lpm_config,
                                        const TrainingConfig& train_config, Rng rng);

}  // namespace lpm
