#include "doctest.h"
#include "lpm/loss.hpp"
#include "lpm/rng.hpp"

#include <cmath>

TEST_CASE("perfect prediction hits the floor") {
  Eigen::VectorXd x = Eigen::VectorXd::Constant(8, 0.3);
  CHECK(lpm::log_mse(x, x, 1e-12) == doctest::Approx(std::log(1e-12)).epsilon(1e-15));
  CHECK(lpm::log_mse(x, x, 1e-12) == doctest::Approx(-27.631021).epsilon(1e-6));
}

TEST_CASE("simple arithmetic case") {
  Eigen::VectorXd target(4), pred = Eigen::VectorXd::Zero(4);
  target << 1, 0, 0, 0;
  CHECK(lpm::log_mse(target, pred) == doctest::Approx(std::log(0.25)).epsilon(1e-15));
}

TEST_CASE("random 784-dim pair matches a naive loop") {
  lpm::Rng rng(9);
  Eigen::VectorXd a(784), b(784);
  for (int i = 0; i < 784; ++i) {
    a(i) = rng.uniform();
    b(i) = rng.uniform();
  }
  double acc = 0.0;
  for (int i = 0; i < 784; ++i) acc += (a(i) - b(i)) * (a(i) - b(i));
  const double want = std::log(acc / 784.0);
  CHECK(lpm::log_mse(a, b) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("log_mse is bounded below by ln(floor)") {
  lpm::Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int dim = 1 + rng.uniform_int(32);
    Eigen::VectorXd a(dim), b(dim);
    for (int i = 0; i < dim; ++i) {
      a(i) = rng.normal();
      b(i) = rng.uniform() < 0.1 ? a(i) : rng.normal();  // sometimes exact
    }
    const double floor = std::pow(10.0, -rng.uniform(2.0, 14.0));
    CHECK(lpm::log_mse(a, b, floor) >= std::log(floor));
  }
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(lpm::log_mse(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(4)),
                  std::invalid_argument);
  CHECK_THROWS_AS(lpm::log_mse(Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3), 0.0),
                  std::invalid_argument);
}
