#include "lpm/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lpm {

bool MlpGradients::all_finite() const {
  for (const auto& w : weights) {
    if (!w.allFinite()) return false;
  }
  for (const auto& b : biases) {
    if (!b.allFinite()) return false;
  }
  return true;
}

void MlpGradients::set_zero() {
  for (auto& w : weights) w.setZero();
  for (auto& b : biases) b.setZero();
}

MlpModel::MlpModel(std::vector<int> layer_sizes, Activation hidden,
                   Activation output)
    : layer_sizes_(std::move(layer_sizes)), hidden_(hidden), output_(output) {
  if (layer_sizes_.size() < 2) {
    throw std::invalid_argument("MlpModel needs at least input and output sizes");
  }
  for (int n : layer_sizes_) {
    if (n <= 0) throw std::invalid_argument("MlpModel layer sizes must be positive");
  }
  weights_.reserve(layer_sizes_.size() - 1);
  biases_.reserve(layer_sizes_.size() - 1);
  for (std::size_t l = 0; l + 1 < layer_sizes_.size(); ++l) {
    weights_.emplace_back(Eigen::MatrixXd::Zero(layer_sizes_[l], layer_sizes_[l + 1]));
    biases_.emplace_back(Eigen::VectorXd::Zero(layer_sizes_[l + 1]));
  }
}

void MlpModel::init_random(Rng& rng) {
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    const double scale = std::sqrt(2.0 / static_cast<double>(layer_sizes_[l]));
    for (Eigen::Index i = 0; i < weights_[l].rows(); ++i) {
      for (Eigen::Index j = 0; j < weights_[l].cols(); ++j) {
        weights_[l](i, j) = scale * rng.normal();
      }
    }
    biases_[l].setZero();
  }
}

std::int64_t MlpModel::parameter_count() const {
  std::int64_t n = 0;
  for (const auto& w : weights_) n += w.size();
  for (const auto& b : biases_) n += b.size();
  return n;
}

Eigen::MatrixXd MlpModel::apply_activation(Eigen::MatrixXd z, Activation act) const {
  switch (act) {
    case Activation::kIdentity:
      return z;
    case Activation::kRelu:
      return z.cwiseMax(0.0);
    case Activation::kLeakyRelu:
      return z.cwiseMax(kLeakyReluSlope * z);
    case Activation::kSigmoid:
      return (1.0 / (1.0 + (-z.array()).exp())).matrix();
  }
  return z;
}

Eigen::MatrixXd MlpModel::activation_derivative(const Eigen::MatrixXd& z,
                                                Activation act) const {
  switch (act) {
    case Activation::kIdentity:
      return Eigen::MatrixXd::Ones(z.rows(), z.cols());
    case Activation::kRelu:
      return (z.array() > 0.0).cast<double>().matrix();
    case Activation::kLeakyRelu:
      return (z.array() > 0.0)
          .select(Eigen::ArrayXXd::Ones(z.rows(), z.cols()),
                  Eigen::ArrayXXd::Constant(z.rows(), z.cols(), kLeakyReluSlope))
          .matrix();
    case Activation::kSigmoid: {
      Eigen::ArrayXXd s = 1.0 / (1.0 + (-z.array()).exp());
      return (s * (1.0 - s)).matrix();
    }
  }
  return Eigen::MatrixXd::Ones(z.rows(), z.cols());
}

Eigen::MatrixXd MlpModel::forward_batch(const Eigen::MatrixXd& inputs) const {
  if (inputs.cols() != input_dim()) {
    throw std::invalid_argument("mlp_forward: input dim " + std::to_string(inputs.cols()) +
                                " != expected " + std::to_string(input_dim()));
  }
  Eigen::MatrixXd a = inputs;
  for (int l = 0; l < layer_count(); ++l) {
    Eigen::MatrixXd z = (a * weights_[l]).rowwise() + biases_[l].transpose();
    const Activation act = (l + 1 == layer_count()) ? output_ : hidden_;
    a = apply_activation(std::move(z), act);
  }
  return a;
}

Eigen::VectorXd MlpModel::forward(const Eigen::VectorXd& input) const {
  return forward_batch(input.transpose()).row(0).transpose();
}

MlpGradients MlpModel::zero_gradients() const {
  MlpGradients g;
  g.weights.reserve(weights_.size());
  g.biases.reserve(biases_.size());
  for (const auto& w : weights_) g.weights.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  for (const auto& b : biases_) g.biases.emplace_back(Eigen::VectorXd::Zero(b.size()));
  return g;
}

MlpGradients MlpModel::backward_batch(const Eigen::MatrixXd& inputs,
                                      const Eigen::MatrixXd& grads_at_output) const {
  if (inputs.cols() != input_dim()) {
    throw std::invalid_argument("mlp_backward: input dim mismatch");
  }
  if (grads_at_output.cols() != output_dim() || grads_at_output.rows() != inputs.rows()) {
    throw std::invalid_argument("mlp_backward: output gradient shape mismatch");
  }

  const int layers = layer_count();
  std::vector<Eigen::MatrixXd> activations(layers + 1);
  std::vector<Eigen::MatrixXd> pre_activations(layers);
  activations[0] = inputs;
  for (int l = 0; l < layers; ++l) {
    pre_activations[l] = (activations[l] * weights_[l]).rowwise() + biases_[l].transpose();
    const Activation act = (l + 1 == layers) ? output_ : hidden_;
    activations[l + 1] = apply_activation(pre_activations[l], act);
  }

  MlpGradients grads = zero_gradients();
  Eigen::MatrixXd delta = grads_at_output.cwiseProduct(
      activation_derivative(pre_activations[layers - 1], output_));
  for (int l = layers - 1; l >= 0; --l) {
    grads.weights[l] = activations[l].transpose() * delta;
    grads.biases[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      delta = (delta * weights_[l].transpose())
                  .cwiseProduct(activation_derivative(pre_activations[l - 1], hidden_));
    }
  }
  return grads;
}

MlpGradients MlpModel::backward(const Eigen::VectorXd& input,
                                const Eigen::VectorXd& grad_at_output) const {
  return backward_batch(input.transpose(), grad_at_output.transpose());
}

bool MlpModel::same_shape(const MlpModel& other) const {
  return layer_sizes_ == other.layer_sizes_;
}

bool MlpModel::all_finite() const {
  for (const auto& w : weights_) {
    if (!w.allFinite()) return false;
  }
  for (const auto& b : biases_) {
    if (!b.allFinite()) return false;
  }
  return true;
}

Eigen::VectorXd encode_obs_action(const Eigen::VectorXd& obs, int action,
                                  int action_count) {
  if (action < 0 || action >= action_count) {
    throw std::invalid_argument("encode_obs_action: action index " + std::to_string(action) +
                                " out of range [0, " + std::to_string(action_count) + ")");
  }
  Eigen::VectorXd x(obs.size() + action_count);
  x.head(obs.size()) = obs;
  x.tail(action_count).setZero();
  x(obs.size() + action) = 1.0;
  return x;
}

}  // namespace lpm
