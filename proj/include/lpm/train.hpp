#pragma once

#include <Eigen/Dense>
#include <numeric>
#include <vector>

#include "lpm/adam.hpp"
#include "lpm/mlp.hpp"
#include "lpm/rng.hpp"

namespace lpm {

/// Shuffled index chunks covering [0, n): one epoch of minibatches.
/// The final partial chunk is kept.
inline std::vector<std::vector<int>> epoch_minibatches(int n, int batch_size, Rng& rng) {
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    std::swap(idx[i], idx[rng.uniform_int(i + 1)]);
  }
  std::vector<std::vector<int>> chunks;
  for (int start = 0; start < n; start += batch_size) {
    const int end = std::min(n, start + batch_size);
    chunks.emplace_back(idx.begin() + start, idx.begin() + end);
  }
  return chunks;
}

/// Indices for one minibatch drawn uniformly with replacement.
inline std::vector<int> sampled_minibatch(int n, int batch_size, Rng& rng) {
  std::vector<int> idx(std::min(batch_size, n));
  for (auto& i : idx) i = rng.uniform_int(n);
  return idx;
}

/// One Adam step of mean-squared-error regression: per-sample loss is the
/// squared error averaged over output dimensions, reduced by batch mean.
inline void mse_regression_step(MlpModel& model, AdamState& adam,
                                const Eigen::MatrixXd& inputs,
                                const Eigen::MatrixXd& targets) {
  const Eigen::MatrixXd pred = model.forward_batch(inputs);
  const double scale = 2.0 / (static_cast<double>(inputs.rows()) *
                              static_cast<double>(model.output_dim()));
  const Eigen::MatrixXd grad_out = scale * (pred - targets);
  adam.step(model, model.backward_batch(inputs, grad_out));
}

}  // namespace lpm
