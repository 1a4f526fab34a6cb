#pragma once

#include <vector>

#include "lpm/adam.hpp"
#include "lpm/explorer.hpp"
#include "lpm/replay.hpp"

namespace lpm {

/// Raw prediction-error curiosity: reward is the dynamics model's squared
/// error on the observed transition, averaged over dimensions. The
/// observation-space specialization of feature-space curiosity (identity
/// feature map). Susceptible to unlearnable noise by construction.
class PeCuriosity : public Explorer {
 public:
  PeCuriosity(int obs_dim, int action_count, TrainingConfig config, Rng rng);

  double observe(const Eigen::VectorXd& obs, int action,
                 const Eigen::VectorXd& obs_next) override;
  void update() override;
  const std::string& name() const override { return name_; }

  const MlpModel& model() const { return model_; }
  MlpModel& model() { return model_; }

 private:
  int obs_dim_;
  int action_count_;
  TrainingConfig config_;
  Rng rng_;
  MlpModel model_;
  AdamState adam_;
  TransitionBuffer buffer_;
  std::int64_t step_ = 0;
  std::string name_ = "pe";
};

/// Random network distillation: a frozen random target embeds the next
/// observation; the predictor is trained to match it. Reward is the
/// squared embedding error. Target parameters never change after
/// construction.
class RndExplorer : public Explorer {
 public:
  RndExplorer(int obs_dim, TrainingConfig config, int embedding_dim, Rng rng);

  double observe(const Eigen::VectorXd& obs, int action,
                 const Eigen::VectorXd& obs_next) override;
  void update() override;
  const std::string& name() const override { return name_; }

  const MlpModel& target() const { return target_; }
  const MlpModel& predictor() const { return predictor_; }
  MlpModel& predictor() { return predictor_; }
  std::int64_t predictor_updates() const { return adam_.step_count(); }

 private:
  int obs_dim_;
  TrainingConfig config_;
  Rng rng_;
  MlpModel target_;     // frozen after init
  MlpModel predictor_;
  AdamState adam_;
  std::vector<Eigen::VectorXd> queue_;  // observations pending predictor training
  std::int64_t step_ = 0;
  std::string name_ = "rnd";
};

/// Ensemble disagreement: reward is the population variance of the
/// members' predictions at (obs, action), averaged over dimensions.
/// Members share every minibatch but start from distinct initializations.
class EnsembleExplorer : public Explorer {
 public:
  EnsembleExplorer(int obs_dim, int action_count, TrainingConfig config, int members, Rng rng);

  double observe(const Eigen::VectorXd& obs, int action,
                 const Eigen::VectorXd& obs_next) override;
  void update() override;
  const std::string& name() const override { return name_; }

  int member_count() const { return static_cast<int>(models_.size()); }
  const MlpModel& member(int i) const { return models_.at(i); }
  MlpModel& member(int i) { return models_.at(i); }

 private:
  int obs_dim_;
  int action_count_;
  TrainingConfig config_;
  Rng rng_;
  std::vector<MlpModel> models_;
  std::vector<AdamState> adams_;
  TransitionBuffer buffer_;
  std::int64_t step_ = 0;
  std::string name_ = "ensemble";
};

/// Double-headed model trained with Gaussian negative log-likelihood:
/// a mean head predicting the next observation and a scalar log-variance
/// head capturing the irreducible error. Reward is prediction MSE minus
/// lambda times the learned variance, so persistent stochasticity is
/// discounted once the variance head catches up.
///
/// Two timescales: the variance head starts from a small optimistic
/// prior and only trains on every variance_update_every-th minibatch.
/// Estimating aleatoric noise needs far more evidence than fitting a
/// mean, and a scalar head tuned at the mean head's cadence would
/// otherwise shadow its own residuals step for step.
class AmaExplorer : public Explorer {
 public:
  AmaExplorer(int obs_dim, int action_count, TrainingConfig config, double lambda, Rng rng,
              int variance_update_every = 64);

  double observe(const Eigen::VectorXd& obs, int action,
                 const Eigen::VectorXd& obs_next) override;
  void update() override;
  const std::string& name() const override { return name_; }

  /// mean prediction and variance at (obs, action)
  Eigen::VectorXd predict_mean(const Eigen::VectorXd& obs, int action) const;
  double predict_variance(const Eigen::VectorXd& obs, int action) const;

  const MlpModel& model() const { return model_; }
  MlpModel& model() { return model_; }
  double lambda() const { return lambda_; }

 private:
  int obs_dim_;
  int action_count_;
  TrainingConfig config_;
  double lambda_;
  Rng rng_;
  MlpModel model_;  // outputs [mean(dim), log_variance(1)]
  AdamState adam_;
  TransitionBuffer buffer_;
  std::int64_t step_ = 0;
  std::int64_t minibatches_seen_ = 0;
  int variance_update_every_;
  std::string name_ = "ama";
};

/// Scores every transition 0; the random-policy floor reference.
class NullExplorer : public Explorer {
 public:
  NullExplorer() = default;
  double observe(const Eigen::VectorXd&, int, const Eigen::VectorXd&) override { return 0.0; }
  void update() override {}
  const std::string& name() const override { return name_; }

 private:
  std::string name_ = "random";
};

}  // namespace lpm
