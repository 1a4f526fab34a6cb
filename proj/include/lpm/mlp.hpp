#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "lpm/rng.hpp"

namespace lpm {

enum class Activation { kIdentity, kRelu, kLeakyRelu, kSigmoid };

constexpr double kLeakyReluSlope = 0.01;

/// Per-parameter gradients, shaped exactly like the model they came from.
struct MlpGradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;

  bool all_finite() const;
  void set_zero();
};

/// Dense fully connected network. Layer l maps n_l -> n_{l+1} through
/// weights (n_l x n_{l+1}), bias (n_{l+1}); the hidden activation is
/// applied after every layer but the last, the output activation after
/// the last. Batches are row-major: one sample per row.
class MlpModel {
 public:
  MlpModel() = default;
  MlpModel(std::vector<int> layer_sizes, Activation hidden,
           Activation output = Activation::kIdentity);

  /// He-style init: weight ~ N(0, 2/fan_in), bias 0.
  void init_random(Rng& rng);

  int input_dim() const { return layer_sizes_.front(); }
  int output_dim() const { return layer_sizes_.back(); }
  int layer_count() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& layer_sizes() const { return layer_sizes_; }
  Activation hidden_activation() const { return hidden_; }
  Activation output_activation() const { return output_; }
  std::int64_t parameter_count() const;

  Eigen::VectorXd forward(const Eigen::VectorXd& input) const;
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& inputs) const;

  /// Gradient of a scalar loss w.r.t. every parameter, given the loss
  /// gradient at the (post-activation) output. The model is not mutated.
  MlpGradients backward(const Eigen::VectorXd& input,
                        const Eigen::VectorXd& grad_at_output) const;

  /// Batched variant; returns the sum over rows of per-sample gradients.
  MlpGradients backward_batch(const Eigen::MatrixXd& inputs,
                              const Eigen::MatrixXd& grads_at_output) const;

  MlpGradients zero_gradients() const;

  std::vector<Eigen::MatrixXd>& weights() { return weights_; }
  const std::vector<Eigen::MatrixXd>& weights() const { return weights_; }
  std::vector<Eigen::VectorXd>& biases() { return biases_; }
  const std::vector<Eigen::VectorXd>& biases() const { return biases_; }

  bool same_shape(const MlpModel& other) const;
  bool all_finite() const;

 private:
  Eigen::MatrixXd apply_activation(Eigen::MatrixXd z, Activation act) const;
  Eigen::MatrixXd activation_derivative(const Eigen::MatrixXd& z,
                                        Activation act) const;

  std::vector<int> layer_sizes_;
  Activation hidden_ = Activation::kRelu;
  Activation output_ = Activation::kIdentity;
  std::vector<Eigen::MatrixXd> weights_;
  std::vector<Eigen::VectorXd> biases_;
};

/// One-hot action encoding appended to the observation; the shared input
/// convention for every (o, a) conditioned model in this project.
Eigen::VectorXd encode_obs_action(const Eigen::VectorXd& obs, int action,
                                  int action_count);

}  // namespace lpm
