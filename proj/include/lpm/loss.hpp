#pragma once

#include <Eigen/Dense>

namespace lpm {

constexpr double kDefaultMseFloor = 1e-12;

/// Mean squared difference over dimensions.
double mean_squared_error(const Eigen::VectorXd& target, const Eigen::VectorXd& prediction);

/// ln(max(floor, MSE(target, prediction))). The floor keeps the log finite
/// when a deterministic transition is predicted perfectly.
double log_mse(const Eigen::VectorXd& target, const Eigen::VectorXd& prediction,
               double floor = kDefaultMseFloor);

}  // namespace lpm
