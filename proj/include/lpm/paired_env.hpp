#pragma once

#include <cstdint>

#include "lpm/digit_bank.hpp"
#include "lpm/env.hpp"
#include "lpm/rng.hpp"

namespace lpm {

/// Two-branch transition environment: one branch is perfectly
/// deterministic, the other is irreducibly stochastic.
///
/// Latent state 0 anchors at the class-0 image; taking the
/// visit-deterministic action from it always returns exactly that image.
/// Latent state 1 anchors at the class-1 image; the visit-stochastic
/// action returns an image drawn uniformly from classes 2-9.
class PairedTransitionEnv {
 public:
  static constexpr int kVisitDeterministic = 0;
  static constexpr int kVisitStochastic = 1;

  explicit PairedTransitionEnv(DigitBank bank);

  StepResult reset(std::uint64_t seed);
  StepResult step(int action);

  /// Anchor observation of a branch origin (0 or 1).
  const Eigen::VectorXd& anchor(int branch) const;

  int action_count() const { return 2; }
  int state_count() const { return 2; }
  int observation_dim() const { return static_cast<int>(anchor_det_.size()); }

 private:
  DigitBank bank_;
  Eigen::VectorXd anchor_det_;
  Eigen::VectorXd anchor_stoch_;
  Rng rng_{0};
  bool reset_called_ = false;
  int latent_ = 0;
};

}  // namespace lpm
