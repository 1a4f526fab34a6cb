#pragma once

#include <cstdint>
#include <vector>

#include "lpm/mlp.hpp"

namespace lpm {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam with bias correction, moments shaped like the model they track.
/// step_count advances by exactly one per step; a step with non-finite
/// gradients is rejected before any state is touched.
class AdamState {
 public:
  AdamState() = default;
  AdamState(const MlpModel& shape, AdamConfig config);

  void step(MlpModel& model, const MlpGradients& grads);

  std::int64_t step_count() const { return step_count_; }
  const AdamConfig& config() const { return config_; }

  std::vector<Eigen::MatrixXd>& weight_m() { return m_w_; }
  std::vector<Eigen::MatrixXd>& weight_v() { return v_w_; }
  std::vector<Eigen::VectorXd>& bias_m() { return m_b_; }
  std::vector<Eigen::VectorXd>& bias_v() { return v_b_; }
  void set_step_count(std::int64_t t) { step_count_ = t; }

 private:
  AdamConfig config_;
  std::int64_t step_count_ = 0;
  std::vector<Eigen::MatrixXd> m_w_, v_w_;
  std::vector<Eigen::VectorXd> m_b_, v_b_;
};

}  // namespace lpm
