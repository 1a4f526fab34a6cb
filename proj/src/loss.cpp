#include "lpm/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lpm {

double mean_squared_error(const Eigen::VectorXd& target, const Eigen::VectorXd& prediction) {
  if (target.size() != prediction.size()) {
    throw std::invalid_argument("mean_squared_error: dim " + std::to_string(target.size()) +
                                " vs " + std::to_string(prediction.size()));
  }
  if (target.size() == 0) {
    throw std::invalid_argument("mean_squared_error: empty vectors");
  }
  return (target - prediction).squaredNorm() / static_cast<double>(target.size());
}

double log_mse(const Eigen::VectorXd& target, const Eigen::VectorXd& prediction, double floor) {
  if (floor <= 0.0) {
    throw std::invalid_argument("log_mse: floor must be positive");
  }
  return std::log(std::max(floor, mean_squared_error(target, prediction)));
}

}  // namespace lpm
