#pragma once

#include <Eigen/Dense>
#include <string>

namespace lpm {

struct StepResult {
  Eigen::VectorXd observation;   // entries in [0,1]
  double extrinsic_reward = 0.0;
  bool done = false;
  int latent_state_id = 0;       // true environment state, noise-independent
};

enum class NoiseMode { kNone, kStateNoise, kActionNoise };

const char* noise_mode_name(NoiseMode mode);
NoiseMode noise_mode_from_name(const std::string& name);

}  // namespace lpm
