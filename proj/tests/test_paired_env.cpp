#include "doctest.h"
#include "lpm/digit_bank.hpp"
#include "lpm/paired_env.hpp"

#include <array>

TEST_CASE("reset is deterministic and anchors at the class-0 image") {
  const auto bank = lpm::synthetic_digit_bank(7);
  lpm::PairedTransitionEnv env(bank);
  const auto a = env.reset(42);
  const auto b = env.reset(42);
  CHECK(a.observation == b.observation);
  CHECK(a.latent_state_id == 0);
  CHECK(a.observation == bank.classes[0][0]);
  CHECK(env.anchor(0) == bank.classes[0][0]);
  CHECK(env.anchor(1) == bank.classes[1][0]);
}

TEST_CASE("deterministic branch returns the identical anchor image") {
  lpm::PairedTransitionEnv env(lpm::synthetic_digit_bank(7));
  env.reset(1);
  for (int i = 0; i < 20; ++i) {
    const auto sr = env.step(lpm::PairedTransitionEnv::kVisitDeterministic);
    CHECK(sr.observation == env.anchor(0));
    CHECK(sr.latent_state_id == 0);
    CHECK(sr.extrinsic_reward == 0.0);
    CHECK_FALSE(sr.done);
  }
}

TEST_CASE("stochastic branch samples classes 2-9 uniformly") {
  const auto bank = lpm::synthetic_digit_bank(7);
  lpm::PairedTransitionEnv env(bank);
  env.reset(5);
  std::array<int, 10> counts{};
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    const auto sr = env.step(lpm::PairedTransitionEnv::kVisitStochastic);
    CHECK(sr.latent_state_id == 1);
    int cls = -1;
    for (int c = 2; c < 10; ++c) {
      if (sr.observation == bank.classes[c][0]) {
        cls = c;
        break;
      }
    }
    REQUIRE(cls >= 2);
    counts[cls] += 1;
  }
  CHECK(counts[0] == 0);
  CHECK(counts[1] == 0);
  for (int c = 2; c < 10; ++c) {
    const double freq = static_cast<double>(counts[c]) / n;
    CHECK(freq == doctest::Approx(1.0 / 8.0).epsilon(0.16));  // 1/8 +- 0.02
    CHECK(std::abs(freq - 0.125) <= 0.02);
  }
}

TEST_CASE("same seed reproduces the stochastic sequence") {
  lpm::PairedTransitionEnv env(lpm::synthetic_digit_bank(7));
  env.reset(9);
  std::vector<Eigen::VectorXd> first;
  for (int i = 0; i < 10; ++i) {
    first.push_back(env.step(lpm::PairedTransitionEnv::kVisitStochastic).observation);
  }
  env.reset(9);
  for (int i = 0; i < 10; ++i) {
    CHECK(env.step(lpm::PairedTransitionEnv::kVisitStochastic).observation == first[i]);
  }
}

TEST_CASE("invalid actions and missing reset are rejected") {
  lpm::PairedTransitionEnv env(lpm::synthetic_digit_bank(7));
  CHECK_THROWS_AS(env.step(0), std::logic_error);
  env.reset(1);
  CHECK_THROWS_AS(env.step(2), std::invalid_argument);
  CHECK_THROWS_AS(env.anchor(2), std::invalid_argument);
}
