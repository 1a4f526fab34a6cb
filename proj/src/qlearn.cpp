#include "lpm/qlearn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lpm {

QTable::QTable(int state_count, int action_count, double alpha, double gamma)
    : q_(Eigen::MatrixXd::Zero(state_count, action_count)), alpha_(alpha), gamma_(gamma) {
  if (state_count <= 0 || action_count <= 0) {
    throw std::invalid_argument("QTable: state and action counts must be positive");
  }
  if (alpha <= 0.0 || alpha > 1.0) throw std::invalid_argument("QTable: alpha in (0,1]");
  if (gamma < 0.0 || gamma > 1.0) throw std::invalid_argument("QTable: gamma in [0,1]");
}

int QTable::greedy_action(int state) const {
  int best = 0;
  for (int a = 1; a < action_count(); ++a) {
    if (q_(state, a) > q_(state, best)) best = a;
  }
  return best;
}

void QTable::update(int state, int action, double reward_total, int next_state, bool done) {
  if (!std::isfinite(reward_total)) {
    throw std::invalid_argument("q_update: non-finite total reward " +
                                std::to_string(reward_total));
  }
  const double bootstrap = done ? 0.0 : gamma_ * q_.row(next_state).maxCoeff();
  q_(state, action) += alpha_ * (reward_total + bootstrap - q_(state, action));
}

int select_action(const QTable& q, int state, double epsilon, Rng& rng) {
  if (state < 0 || state >= q.state_count()) {
    throw std::invalid_argument("select_action: state id out of range");
  }
  if (epsilon > 0.0 && rng.uniform() < epsilon) {
    return rng.uniform_int(q.action_count());
  }
  return q.greedy_action(state);
}

}  // namespace lpm
