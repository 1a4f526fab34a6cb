#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "lpm/rng.hpp"

namespace lpm {

/// Tabular action values over latent state ids. Unseen pairs read as 0.
class QTable {
 public:
  QTable(int state_count, int action_count, double alpha = 0.1, double gamma = 0.99);

  double value(int state, int action) const { return q_(state, action); }
  int action_count() const { return static_cast<int>(q_.cols()); }
  int state_count() const { return static_cast<int>(q_.rows()); }
  double alpha() const { return alpha_; }
  double gamma() const { return gamma_; }

  /// Greedy action; ties resolve to the lowest index.
  int greedy_action(int state) const;

  /// Q(s,a) += alpha * (r + gamma * max_a' Q(s',a') * (1-done) - Q(s,a)).
  /// Non-finite rewards are rejected.
  void update(int state, int action, double reward_total, int next_state, bool done);

 private:
  Eigen::MatrixXd q_;
  double alpha_;
  double gamma_;
};

/// Linear decay from start to end over decay_steps, then flat.
struct EpsilonSchedule {
  double start = 1.0;
  double end = 0.05;
  std::int64_t decay_steps = 1;

  double value(std::int64_t t) const {
    if (t >= decay_steps) return end;
    const double frac = static_cast<double>(t) / static_cast<double>(decay_steps);
    return start + (end - start) * frac;
  }
};

/// Epsilon-greedy: uniform action with probability epsilon, else greedy.
int select_action(const QTable& q, int state, double epsilon, Rng& rng);

}  // namespace lpm
