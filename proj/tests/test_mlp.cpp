#include "doctest.h"
#include "lpm/mlp.hpp"

#include <cmath>
#include <vector>

namespace {

// Straight-line recomputation with plain loops, independent of the Eigen
// path under test.
std::vector<double> naive_forward(const lpm::MlpModel& m, const std::vector<double>& input) {
  std::vector<double> a = input;
  const auto& sizes = m.layer_sizes();
  for (int l = 0; l + 1 < static_cast<int>(sizes.size()); ++l) {
    std::vector<double> z(sizes[l + 1]);
    for (int j = 0; j < sizes[l + 1]; ++j) {
      double acc = m.biases()[l](j);
      for (int i = 0; i < sizes[l]; ++i) acc += a[i] * m.weights()[l](i, j);
      z[j] = acc;
    }
    const bool last = (l + 2 == static_cast<int>(sizes.size()));
    const lpm::Activation act = last ? m.output_activation() : m.hidden_activation();
    for (double& v : z) {
      switch (act) {
        case lpm::Activation::kIdentity:
          break;
        case lpm::Activation::kRelu:
          v = std::max(0.0, v);
          break;
        case lpm::Activation::kLeakyRelu:
          v = v > 0 ? v : lpm::kLeakyReluSlope * v;
          break;
        case lpm::Activation::kSigmoid:
          v = 1.0 / (1.0 + std::exp(-v));
          break;
      }
    }
    a = std::move(z);
  }
  return a;
}

double dot_loss(const lpm::MlpModel& m, const Eigen::VectorXd& input,
                const Eigen::VectorXd& direction) {
  return direction.dot(m.forward(input));
}

}  // namespace

TEST_CASE("zero weights and biases map anything to zero") {
  lpm::MlpModel m({4, 3, 2}, lpm::Activation::kRelu);
  Eigen::VectorXd x(4);
  x << 1.0, -2.0, 0.5, 3.0;
  CHECK(m.forward(x).isZero());
}

TEST_CASE("identity single layer reproduces its input") {
  lpm::MlpModel m({3, 3}, lpm::Activation::kIdentity, lpm::Activation::kIdentity);
  m.weights()[0] = Eigen::MatrixXd::Identity(3, 3);
  Eigen::VectorXd x(3);
  x << 0.3, -1.7, 2.2;
  CHECK((m.forward(x) - x).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("random two-layer forward matches a naive loop recomputation") {
  lpm::Rng rng(17);
  for (const auto out_act : {lpm::Activation::kIdentity, lpm::Activation::kSigmoid}) {
    lpm::MlpModel m({5, 7, 3}, lpm::Activation::kRelu, out_act);
    m.init_random(rng);
    for (auto& b : m.biases()) {
      for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = rng.normal() * 0.1;
    }
    std::vector<double> input(5);
    for (double& v : input) v = rng.normal();
    const Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(input.data(), 5);

    const Eigen::VectorXd got = m.forward(x);
    const std::vector<double> want = naive_forward(m, input);
    for (int i = 0; i < 3; ++i) CHECK(got(i) == doctest::Approx(want[i]).epsilon(1e-12));
  }
}

TEST_CASE("forward rejects inputs of the wrong dimension") {
  lpm::MlpModel m({4, 2}, lpm::Activation::kRelu);
  CHECK_THROWS_AS(m.forward(Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

TEST_CASE("zero loss gradient yields zero parameter gradients") {
  lpm::Rng rng(23);
  lpm::MlpModel m({4, 6, 2}, lpm::Activation::kLeakyRelu);
  m.init_random(rng);
  Eigen::VectorXd x(4);
  x << 0.1, 0.2, -0.4, 0.9;
  const auto g = m.backward(x, Eigen::VectorXd::Zero(2));
  for (const auto& gw : g.weights) CHECK(gw.isZero());
  for (const auto& gb : g.biases) CHECK(gb.isZero());
}

TEST_CASE("single linear layer: weight gradient is the outer product") {
  // Squared-error loss 0.5 * ||y - Wx - b||^2; dL/dW = x (y_hat - y)^T.
  lpm::MlpModel m({3, 2}, lpm::Activation::kIdentity, lpm::Activation::kIdentity);
  lpm::Rng rng(31);
  m.init_random(rng);
  Eigen::VectorXd x(3), y(2);
  x << 0.5, -1.0, 2.0;
  y << 1.0, 0.0;
  const Eigen::VectorXd err = m.forward(x) - y;
  const auto g = m.backward(x, err);
  const Eigen::MatrixXd want = x * err.transpose();
  CHECK((g.weights[0] - want).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((g.biases[0] - err).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("gradients match central finite differences on random models") {
  lpm::Rng rng(47);
  const double h = 1e-5;
  for (int trial = 0; trial < 10; ++trial) {
    const int din = 2 + rng.uniform_int(4);
    const int dhid = 2 + rng.uniform_int(5);
    const int dout = 1 + rng.uniform_int(3);
    const auto hidden = trial % 2 == 0 ? lpm::Activation::kRelu : lpm::Activation::kLeakyRelu;
    const auto output =
        trial % 3 == 0 ? lpm::Activation::kSigmoid : lpm::Activation::kIdentity;
    lpm::MlpModel m({din, dhid, dout}, hidden, output);
    m.init_random(rng);
    for (auto& b : m.biases()) {
      for (Eigen::Index i = 0; i < b.size(); ++i) b(i) = 0.1 * rng.normal();
    }

    Eigen::VectorXd x(din), dir(dout);
    for (Eigen::Index i = 0; i < din; ++i) x(i) = rng.normal();
    for (Eigen::Index i = 0; i < dout; ++i) dir(i) = rng.normal();

    const auto analytic = m.backward(x, dir);
    for (std::size_t l = 0; l < m.weights().size(); ++l) {
      for (Eigen::Index i = 0; i < m.weights()[l].rows(); ++i) {
        for (Eigen::Index j = 0; j < m.weights()[l].cols(); ++j) {
          const double saved = m.weights()[l](i, j);
          m.weights()[l](i, j) = saved + h;
          const double up = dot_loss(m, x, dir);
          m.weights()[l](i, j) = saved - h;
          const double down = dot_loss(m, x, dir);
          m.weights()[l](i, j) = saved;
          const double fd = (up - down) / (2 * h);
          const double a = analytic.weights[l](i, j);
          CHECK(std::abs(a - fd) <= 1e-4 * std::max({1e-6, std::abs(a), std::abs(fd)}));
        }
      }
    }
  }
}

TEST_CASE("batched backward equals the sum of per-sample gradients") {
  lpm::Rng rng(53);
  lpm::MlpModel m({3, 5, 2}, lpm::Activation::kRelu, lpm::Activation::kSigmoid);
  m.init_random(rng);
  Eigen::MatrixXd X(4, 3), G(4, 2);
  for (Eigen::Index i = 0; i < X.size(); ++i) X.data()[i] = rng.normal();
  for (Eigen::Index i = 0; i < G.size(); ++i) G.data()[i] = rng.normal();

  const auto batched = m.backward_batch(X, G);
  auto manual = m.zero_gradients();
  for (int r = 0; r < 4; ++r) {
    const auto g = m.backward(X.row(r).transpose(), G.row(r).transpose());
    for (std::size_t l = 0; l < manual.weights.size(); ++l) {
      manual.weights[l] += g.weights[l];
      manual.biases[l] += g.biases[l];
    }
  }
  for (std::size_t l = 0; l < manual.weights.size(); ++l) {
    CHECK((batched.weights[l] - manual.weights[l]).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((batched.biases[l] - manual.biases[l]).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("forward and backward are bit-deterministic") {
  auto build = [] {
    lpm::Rng rng(61);
    lpm::MlpModel m({6, 8, 4}, lpm::Activation::kRelu);
    m.init_random(rng);
    return m;
  };
  const auto m1 = build();
  const auto m2 = build();
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(6, -1.0, 1.0);
  Eigen::VectorXd d = Eigen::VectorXd::LinSpaced(4, 0.5, 2.0);
  CHECK(m1.forward(x) == m2.forward(x));
  const auto g1 = m1.backward(x, d);
  const auto g2 = m2.backward(x, d);
  for (std::size_t l = 0; l < g1.weights.size(); ++l) {
    CHECK(g1.weights[l] == g2.weights[l]);
  }
}

TEST_CASE("one-hot encoding appends the action") {
  Eigen::VectorXd obs(2);
  obs << 0.25, 0.75;
  const Eigen::VectorXd x = lpm::encode_obs_action(obs, 2, 4);
  CHECK(x.size() == 6);
  CHECK(x(0) == 0.25);
  CHECK(x(4) == 1.0);
  CHECK(x(2) + x(3) + x(5) == 0.0);
  CHECK_THROWS_AS(lpm::encode_obs_action(obs, 4, 4), std::invalid_argument);
}
