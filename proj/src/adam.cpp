#include "lpm/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace lpm {

AdamState::AdamState(const MlpModel& shape, AdamConfig config) : config_(config) {
  m_w_.reserve(shape.weights().size());
  v_w_.reserve(shape.weights().size());
  for (const auto& w : shape.weights()) {
    m_w_.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    v_w_.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
  }
  m_b_.reserve(shape.biases().size());
  v_b_.reserve(shape.biases().size());
  for (const auto& b : shape.biases()) {
    m_b_.emplace_back(Eigen::VectorXd::Zero(b.size()));
    v_b_.emplace_back(Eigen::VectorXd::Zero(b.size()));
  }
}

void AdamState::step(MlpModel& model, const MlpGradients& grads) {
  if (grads.weights.size() != m_w_.size() || grads.biases.size() != m_b_.size()) {
    throw std::invalid_argument("adam_step: gradient layer count mismatch");
  }
  if (!grads.all_finite()) {
    throw std::invalid_argument("adam_step: non-finite gradient, step rejected at t=" +
                                std::to_string(step_count_ + 1));
  }

  step_count_ += 1;
  const double b1 = config_.beta1;
  const double b2 = config_.beta2;
  const double corr1 = 1.0 - std::pow(b1, static_cast<double>(step_count_));
  const double corr2 = 1.0 - std::pow(b2, static_cast<double>(step_count_));
  const double lr = config_.learning_rate;
  const double eps = config_.epsilon;

  for (std::size_t l = 0; l < m_w_.size(); ++l) {
    m_w_[l] = b1 * m_w_[l] + (1.0 - b1) * grads.weights[l];
    v_w_[l] = (b2 * v_w_[l].array() + (1.0 - b2) * grads.weights[l].array().square()).matrix();
    model.weights()[l].array() -=
        lr * (m_w_[l].array() / corr1) / ((v_w_[l].array() / corr2).sqrt() + eps);

    m_b_[l] = b1 * m_b_[l] + (1.0 - b1) * grads.biases[l];
    v_b_[l] = (b2 * v_b_[l].array() + (1.0 - b2) * grads.biases[l].array().square()).matrix();
    model.biases()[l].array() -=
        lr * (m_b_[l].array() / corr1) / ((v_b_[l].array() / corr2).sqrt() + eps);
  }
}

}  // namespace lpm
