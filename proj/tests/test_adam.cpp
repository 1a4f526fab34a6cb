#include "doctest.h"
#include "lpm/adam.hpp"

#include <cmath>

namespace {

lpm::MlpModel scalar_model(double w0) {
  lpm::MlpModel m({1, 1}, lpm::Activation::kIdentity, lpm::Activation::kIdentity);
  m.weights()[0](0, 0) = w0;
  return m;
}

lpm::MlpGradients scalar_grad(const lpm::MlpModel& m, double gw, double gb = 0.0) {
  auto g = m.zero_gradients();
  g.weights[0](0, 0) = gw;
  g.biases[0](0) = gb;
  return g;
}

}  // namespace

TEST_CASE("zero gradients leave parameters untouched") {
  lpm::Rng rng(2);
  lpm::MlpModel m({3, 4, 2}, lpm::Activation::kRelu);
  m.init_random(rng);
  const auto before = m.weights();
  lpm::AdamState adam(m, {});
  adam.step(m, m.zero_gradients());
  for (std::size_t l = 0; l < before.size(); ++l) CHECK(m.weights()[l] == before[l]);
  CHECK(adam.step_count() == 1);
}

TEST_CASE("first step matches the hand-executed update equations") {
  // m1 = 0.1*g, v1 = 0.001*g^2, with bias correction both normalize to
  // g and g^2, so the step is alpha * g / (|g| + eps).
  const double alpha = 0.05;
  auto m = scalar_model(1.0);
  lpm::AdamState adam(m, {alpha});
  adam.step(m, scalar_grad(m, 1.0));
  const double expected = 1.0 - alpha * 1.0 / (1.0 + 1e-8);
  CHECK(m.weights()[0](0, 0) == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("ten random steps match an independent scalar oracle") {
  const double alpha = 0.01, b1 = 0.9, b2 = 0.999, eps = 1e-8;
  auto model = scalar_model(0.5);
  lpm::AdamState adam(model, {alpha, b1, b2, eps});

  double w = 0.5, m1 = 0.0, v1 = 0.0;
  lpm::Rng rng(77);
  for (int t = 1; t <= 10; ++t) {
    const double g = rng.normal();
    adam.step(model, scalar_grad(model, g));

    m1 = b1 * m1 + (1 - b1) * g;
    v1 = b2 * v1 + (1 - b2) * g * g;
    const double mhat = m1 / (1 - std::pow(b1, t));
    const double vhat = v1 / (1 - std::pow(b2, t));
    w -= alpha * mhat / (std::sqrt(vhat) + eps);

    CHECK(model.weights()[0](0, 0) == doctest::Approx(w).epsilon(1e-12));
  }
  CHECK(adam.step_count() == 10);
}

TEST_CASE("non-finite gradients are rejected before any mutation") {
  auto m = scalar_model(2.0);
  lpm::AdamState adam(m, {});
  CHECK_THROWS_AS(adam.step(m, scalar_grad(m, std::nan(""))), std::invalid_argument);
  CHECK(m.weights()[0](0, 0) == 2.0);
  CHECK(adam.step_count() == 0);
}
