#include "lpm/paired_env.hpp"

#include <stdexcept>
#include <string>

namespace lpm {

PairedTransitionEnv::PairedTransitionEnv(DigitBank bank) : bank_(std::move(bank)) {
  if (!bank_.complete()) {
    throw std::invalid_argument("PairedTransitionEnv: digit bank has empty classes");
  }
  anchor_det_ = bank_.classes[0][0];
  anchor_stoch_ = bank_.classes[1][0];
}

StepResult PairedTransitionEnv::reset(std::uint64_t seed) {
  rng_ = Rng(seed);
  reset_called_ = true;
  latent_ = 0;
  return {anchor_det_, 0.0, false, 0};
}

StepResult PairedTransitionEnv::step(int action) {
  if (!reset_called_) throw std::logic_error("PairedTransitionEnv: step before reset");
  if (action == kVisitDeterministic) {
    latent_ = 0;
    return {anchor_det_, 0.0, false, 0};
  }
  if (action == kVisitStochastic) {
    latent_ = 1;
    const int cls = 2 + rng_.uniform_int(8);
    const auto& images = bank_.classes[cls];
    const int idx = images.size() == 1 ? 0 : rng_.uniform_int(static_cast<int>(images.size()));
    return {images[idx], 0.0, false, 1};
  }
  throw std::invalid_argument("PairedTransitionEnv: invalid action " + std::to_string(action));
}

const Eigen::VectorXd& PairedTransitionEnv::anchor(int branch) const {
  if (branch == 0) return anchor_det_;
  if (branch == 1) return anchor_stoch_;
  throw std::invalid_argument("PairedTransitionEnv: invalid branch " + std::to_string(branch));
}

}  // namespace lpm
