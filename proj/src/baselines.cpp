#include "lpm/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "lpm/loss.hpp"
#include "lpm/train.hpp"

namespace lpm {

namespace {

std::vector<int> model_sizes(int in_dim, const std::vector<int>& hidden, int out_dim) {
  std::vector<int> sizes;
  sizes.push_back(in_dim);
  sizes.insert(sizes.end(), hidden.begin(), hidden.end());
  sizes.push_back(out_dim);
  return sizes;
}

}  // namespace

// ---------------------------------------------------------------- PE

PeCuriosity::PeCuriosity(int obs_dim, int action_count, TrainingConfig config, Rng rng)
    : obs_dim_(obs_dim),
      action_count_(action_count),
      config_(std::move(config)),
      rng_(rng),
      model_(model_sizes(obs_dim + action_count, config_.hidden, obs_dim),
             config_.hidden_activation, config_.output_activation),
      buffer_(config_.buffer_capacity) {
  Rng init = rng_.derive(1);
  model_.init_random(init);
  adam_ = AdamState(model_, config_.adam());
}

double PeCuriosity::observe(const Eigen::VectorXd& obs, int action,
                            const Eigen::VectorXd& obs_next) {
  if (obs.size() != obs_dim_ || obs_next.size() != obs_dim_) {
    throw std::invalid_argument("pe observe: observation dim mismatch");
  }
  const Eigen::VectorXd pred = model_.forward(encode_obs_action(obs, action, action_count_));
  buffer_.push({obs, action, obs_next});
  return mean_squared_error(obs_next, pred);
}

void PeCuriosity::update() {
  step_ += 1;
  if (step_ % config_.update_every != 0 || buffer_.empty()) return;
  for (int b = 0; b < config_.minibatches_per_update; ++b) {
    const auto idx = sampled_minibatch(static_cast<int>(buffer_.size()), config_.batch_size, rng_);
    Eigen::MatrixXd x(idx.size(), obs_dim_ + action_count_);
    Eigen::MatrixXd y(idx.size(), obs_dim_);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const Transition& t = buffer_[idx[r]];
      x.row(r) = encode_obs_action(t.obs, t.action, action_count_);
      y.row(r) = t.obs_next;
    }
    mse_regression_step(model_, adam_, x, y);
  }
}

// ---------------------------------------------------------------- RND

RndExplorer::RndExplorer(int obs_dim, TrainingConfig config, int embedding_dim, Rng rng)
    : obs_dim_(obs_dim),
      config_(std::move(config)),
      rng_(rng),
      target_(model_sizes(obs_dim, config_.hidden, embedding_dim),
              config_.hidden_activation, Activation::kIdentity),
      predictor_(model_sizes(obs_dim, config_.hidden, embedding_dim),
                 config_.hidden_activation, Activation::kIdentity) {
  Rng t_init = rng_.derive(1);
  Rng p_init = rng_.derive(2);
  target_.init_random(t_init);
  predictor_.init_random(p_init);
  adam_ = AdamState(predictor_, config_.adam());
}

double RndExplorer::observe(const Eigen::VectorXd& obs, int /*action*/,
                            const Eigen::VectorXd& obs_next) {
  if (obs.size() != obs_dim_ || obs_next.size() != obs_dim_) {
    throw std::invalid_argument("rnd observe: observation dim mismatch");
  }
  queue_.push_back(obs_next);
  if (static_cast<std::int64_t>(queue_.size()) > config_.buffer_capacity) {
    queue_.erase(queue_.begin());
  }
  return (target_.forward(obs_next) - predictor_.forward(obs_next)).squaredNorm();
}

void RndExplorer::update() {
  step_ += 1;
  if (step_ % config_.update_every != 0 || queue_.empty()) return;
  // One minibatch per training round: the distillation target is cheap to
  // chase and this keeps the predictor on the shared step budget.
  const auto idx = sampled_minibatch(static_cast<int>(queue_.size()), config_.batch_size, rng_);
  Eigen::MatrixXd x(idx.size(), obs_dim_);
  for (std::size_t r = 0; r < idx.size(); ++r) x.row(r) = queue_[idx[r]];
  const Eigen::MatrixXd y = target_.forward_batch(x);
  mse_regression_step(predictor_, adam_, x, y);
}

// ---------------------------------------------------------------- Ensemble

EnsembleExplorer::EnsembleExplorer(int obs_dim, int action_count, TrainingConfig config,
                                   int members, Rng rng)
    : obs_dim_(obs_dim),
      action_count_(action_count),
      config_(std::move(config)),
      rng_(rng),
      buffer_(config_.buffer_capacity) {
  if (members < 2) throw std::invalid_argument("EnsembleExplorer: needs at least 2 members");
  models_.reserve(members);
  adams_.reserve(members);
  for (int k = 0; k < members; ++k) {
    models_.emplace_back(model_sizes(obs_dim + action_count, config_.hidden, obs_dim),
                         config_.hidden_activation, config_.output_activation);
    Rng init = rng_.derive(100 + static_cast<std::uint64_t>(k));
    models_.back().init_random(init);
    adams_.emplace_back(models_.back(), config_.adam());
  }
}

double EnsembleExplorer::observe(const Eigen::VectorXd& obs, int action,
                                 const Eigen::VectorXd& obs_next) {
  if (obs.size() != obs_dim_ || obs_next.size() != obs_dim_) {
    throw std::invalid_argument("ensemble observe: observation dim mismatch");
  }
  const Eigen::VectorXd x = encode_obs_action(obs, action, action_count_);
  const int k = member_count();
  Eigen::MatrixXd preds(k, obs_dim_);
  for (int i = 0; i < k; ++i) preds.row(i) = models_[i].forward(x);

  // Disagreement is target-free; the transition is only logged for training.
  buffer_.push({obs, action, obs_next});

  const Eigen::RowVectorXd mean = preds.colwise().mean();
  const double var_sum = (preds.rowwise() - mean).squaredNorm() / static_cast<double>(k);
  return var_sum / static_cast<double>(obs_dim_);
}

void EnsembleExplorer::update() {
  step_ += 1;
  if (step_ % config_.update_every != 0 || buffer_.empty()) return;
  for (int b = 0; b < config_.minibatches_per_update; ++b) {
    const auto idx = sampled_minibatch(static_cast<int>(buffer_.size()), config_.batch_size, rng_);
    Eigen::MatrixXd x(idx.size(), obs_dim_ + action_count_);
    Eigen::MatrixXd y(idx.size(), obs_dim_);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const Transition& t = buffer_[idx[r]];
      x.row(r) = encode_obs_action(t.obs, t.action, action_count_);
      y.row(r) = t.obs_next;
    }
    // identical minibatches, distinct weights
    for (int k = 0; k < member_count(); ++k) {
      mse_regression_step(models_[k], adams_[k], x, y);
    }
  }
}

// ---------------------------------------------------------------- AMA

AmaExplorer::AmaExplorer(int obs_dim, int action_count, TrainingConfig config, double lambda,
                         Rng rng, int variance_update_every)
    : obs_dim_(obs_dim),
      action_count_(action_count),
      config_(std::move(config)),
      lambda_(lambda),
      rng_(rng),
      model_(model_sizes(obs_dim + action_count, config_.hidden, obs_dim + 1),
             config_.hidden_activation, Activation::kIdentity),
      buffer_(config_.buffer_capacity),
      variance_update_every_(variance_update_every) {
  if (lambda < 0) throw std::invalid_argument("AmaExplorer: lambda must be >= 0");
  if (variance_update_every < 1) {
    throw std::invalid_argument("AmaExplorer: variance_update_every must be >= 1");
  }
  Rng init = rng_.derive(1);
  model_.init_random(init);
  // Optimistic variance prior: start Sigma small so prediction error is
  // treated as epistemic until the variance head learns otherwise.
  model_.biases().back()(obs_dim_) = std::log(1e-3);
  adam_ = AdamState(model_, config_.adam());
}

double AmaExplorer::observe(const Eigen::VectorXd& obs, int action,
                            const Eigen::VectorXd& obs_next) {
  if (obs.size() != obs_dim_ || obs_next.size() != obs_dim_) {
    throw std::invalid_argument("ama observe: observation dim mismatch");
  }
  const Eigen::VectorXd out = model_.forward(encode_obs_action(obs, action, action_count_));
  buffer_.push({obs, action, obs_next});
  const double mse = (obs_next - out.head(obs_dim_)).squaredNorm() / obs_dim_;
  const double variance = std::exp(out(obs_dim_));
  return mse - lambda_ * variance;
}

Eigen::VectorXd AmaExplorer::predict_mean(const Eigen::VectorXd& obs, int action) const {
  return model_.forward(encode_obs_action(obs, action, action_count_)).head(obs_dim_);
}

double AmaExplorer::predict_variance(const Eigen::VectorXd& obs, int action) const {
  return std::exp(model_.forward(encode_obs_action(obs, action, action_count_))(obs_dim_));
}

void AmaExplorer::update() {
  step_ += 1;
  if (step_ % config_.update_every != 0 || buffer_.empty()) return;
  for (int b = 0; b < config_.minibatches_per_update; ++b) {
    const auto idx = sampled_minibatch(static_cast<int>(buffer_.size()), config_.batch_size, rng_);
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd x(n, obs_dim_ + action_count_);
    Eigen::MatrixXd target(n, obs_dim_);
    for (Eigen::Index r = 0; r < n; ++r) {
      const Transition& t = buffer_[idx[r]];
      x.row(r) = encode_obs_action(t.obs, t.action, action_count_);
      target.row(r) = t.obs_next;
    }
    // Per-dimension Gaussian NLL with a shared scalar variance:
    //   L = 0.5 * (log S + MSE / S),  S = exp(s)
    //   dL/dmu = (mu - o') / (S * dim),  dL/ds = 0.5 * (1 - MSE / S)
    minibatches_seen_ += 1;
    const bool train_variance = minibatches_seen_ % variance_update_every_ == 0;
    const Eigen::MatrixXd out = model_.forward_batch(x);
    Eigen::MatrixXd grad_out(n, obs_dim_ + 1);
    for (Eigen::Index r = 0; r < n; ++r) {
      const double s = out(r, obs_dim_);
      const double variance = std::exp(s);
      const Eigen::VectorXd diff =
          out.row(r).head(obs_dim_).transpose() - target.row(r).transpose();
      const double mse = diff.squaredNorm() / obs_dim_;
      grad_out.row(r).head(obs_dim_) =
          diff.transpose() / (variance * static_cast<double>(obs_dim_));
      grad_out(r, obs_dim_) = train_variance ? 0.5 * (1.0 - mse / variance) : 0.0;
    }
    grad_out /= static_cast<double>(n);  // batch mean reduction
    adam_.step(model_, model_.backward_batch(x, grad_out));
  }
}

// ---------------------------------------------------------------- factory

const char* explorer_kind_name(ExplorerKind kind) {
  switch (kind) {
    case ExplorerKind::kLpm: return "lpm";
    case ExplorerKind::kPe: return "pe";
    case ExplorerKind::kRnd: return "rnd";
    case ExplorerKind::kEnsemble: return "ensemble";
    case ExplorerKind::kAma: return "ama";
    case ExplorerKind::kRandom: return "random";
  }
  return "lpm";
}

ExplorerKind explorer_kind_from_name(const std::string& name) {
  if (name == "lpm") return ExplorerKind::kLpm;
  if (name == "pe") return ExplorerKind::kPe;
  if (name == "rnd") return ExplorerKind::kRnd;
  if (name == "ensemble") return ExplorerKind::kEnsemble;
  if (name == "ama") return ExplorerKind::kAma;
  if (name == "random") return ExplorerKind::kRandom;
  throw std::invalid_argument("unknown explorer: " + name);
}

std::unique_ptr<Explorer> make_explorer(ExplorerKind kind, int obs_dim, int action_count,
                                        const LpmConfig& lpm_config,
                                        const TrainingConfig& train_config, Rng rng) {
  switch (kind) {
    case ExplorerKind::kLpm:
      return std::make_unique<LpmExplorer>(obs_dim, action_count, lpm_config, rng);
    case ExplorerKind::kPe:
      return std::make_unique<PeCuriosity>(obs_dim, action_count, train_config, rng);
    case ExplorerKind::kRnd:
      return std::make_unique<RndExplorer>(obs_dim, train_config, 64, rng);
    case ExplorerKind::kEnsemble:
      return std::make_unique<EnsembleExplorer>(obs_dim, action_count, train_config, 5, rng);
    case ExplorerKind::kAma:
      return std::make_unique<AmaExplorer>(obs_dim, action_count, train_config, 1.0, rng);
    case ExplorerKind::kRandom:
      return std::make_unique<NullExplorer>();
  }
  throw std::invalid_argument("make_explorer: unhandled kind");
}

}  // namespace lpm
