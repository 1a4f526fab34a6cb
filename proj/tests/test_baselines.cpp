#include "doctest.h"
#include "lpm/baselines.hpp"
#include "lpm/digit_bank.hpp"
#include "lpm/loss.hpp"
#include "lpm/metrics.hpp"
#include "lpm/paired_env.hpp"

#include <cmath>

namespace {

lpm::TrainingConfig small_train() {
  lpm::TrainingConfig c;
  c.hidden = {8};
  c.batch_size = 4;
  c.minibatches_per_update = 2;
  return c;
}

Eigen::VectorXd vec(std::initializer_list<double> vals) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("pe: perfect prediction scores zero, f == 0 scores the mean square") {
  lpm::PeCuriosity pe(2, 2, small_train(), lpm::Rng(1));
  for (auto& w : pe.model().weights()) w.setZero();
  for (auto& b : pe.model().biases()) b.setZero();
  CHECK(pe.observe(vec({0.3, 0.4}), 0, vec({0.0, 0.0})) == 0.0);
  CHECK(pe.observe(vec({0.3, 0.4}), 1, vec({1.0, 0.0})) == doctest::Approx(0.5));
  CHECK_THROWS_AS(pe.observe(vec({0.3}), 0, vec({0.0, 0.0})), std::invalid_argument);
}

TEST_CASE("pe on the paired environment: stochastic reward stays high, deterministic fades") {
  const auto bank = lpm::synthetic_digit_bank(7);
  lpm::PairedTransitionEnv env(bank);
  env.reset(5);
  auto cfg = small_train();
  cfg.hidden = {64};
  lpm::PeCuriosity pe(env.observation_dim(), 2, cfg, lpm::Rng(2));

  std::vector<double> det, stoch;
  for (int t = 0; t < 300; ++t) {
    const auto d = env.step(lpm::PairedTransitionEnv::kVisitDeterministic);
    det.push_back(pe.observe(env.anchor(0), 0, d.observation));
    const auto s = env.step(lpm::PairedTransitionEnv::kVisitStochastic);
    stoch.push_back(pe.observe(env.anchor(1), 1, s.observation));
    pe.update();
  }
  const double det_tail = lpm::mean_of({det.end() - 100, det.end()});
  const double stoch_tail = lpm::mean_of({stoch.end() - 100, stoch.end()});
  // the noisy branch keeps paying out: the classic curiosity trap
  CHECK(stoch_tail > 10.0 * det_tail);
  CHECK(stoch_tail > 0.05);
}

TEST_CASE("rnd: predictor copied from target scores zero; target stays frozen") {
  lpm::RndExplorer rnd(3, small_train(), 8, lpm::Rng(3));
  rnd.predictor() = rnd.target();
  CHECK(rnd.observe(vec({0.1, 0.2, 0.3}), 0, vec({0.5, 0.5, 0.5})) == 0.0);

  const auto target_weights = rnd.target().weights();
  lpm::Rng probe(4);
  for (int t = 0; t < 1000; ++t) {
    Eigen::VectorXd o(3);
    for (int i = 0; i < 3; ++i) o(i) = probe.uniform();
    rnd.observe(o, 0, o);
    rnd.update();
  }
  CHECK(rnd.target().weights() == target_weights);  // bit-identical
}

TEST_CASE("rnd: repeated single observation is distilled away") {
  auto cfg = small_train();
  cfg.hidden = {16, 16};
  lpm::RndExplorer rnd(4, cfg, 8, lpm::Rng(5));
  const Eigen::VectorXd o = vec({0.2, 0.4, 0.6, 0.8});
  const double initial = rnd.observe(o, 0, o);
  double last = initial;
  while (rnd.predictor_updates() < 500) {
    rnd.update();
    last = rnd.observe(o, 0, o);
  }
  CHECK(last < 0.01 * initial);
}

TEST_CASE("ensemble: identical members disagree by zero") {
  lpm::EnsembleExplorer ens(2, 2, small_train(), 3, lpm::Rng(6));
  for (int k = 1; k < ens.member_count(); ++k) ens.member(k) = ens.member(0);
  CHECK(ens.observe(vec({0.3, 0.4}), 1, vec({0.0, 0.0})) == doctest::Approx(0.0));
}

TEST_CASE("ensemble: two 1-d members at 0 and 2 have population variance 1") {
  lpm::TrainingConfig cfg = small_train();
  lpm::EnsembleExplorer ens(1, 1, cfg, 2, lpm::Rng(7));
  for (int k = 0; k < 2; ++k) {
    for (auto& w : ens.member(k).weights()) w.setZero();
    for (auto& b : ens.member(k).biases()) b.setZero();
  }
  ens.member(1).biases().back()(0) = 2.0;
  CHECK(ens.observe(vec({0.5}), 0, vec({0.0})) == doctest::Approx(1.0));
}

TEST_CASE("ensemble: disagreement matches a brute-force variance computation") {
  lpm::EnsembleExplorer ens(3, 2, small_train(), 5, lpm::Rng(8));
  lpm::Rng probe(9);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd o(3);
    for (int i = 0; i < 3; ++i) o(i) = probe.uniform();
    const int a = probe.uniform_int(2);
    const double got = ens.observe(o, a, o);

    const Eigen::VectorXd x = lpm::encode_obs_action(o, a, 2);
    double var_acc = 0.0;
    for (int d = 0; d < 3; ++d) {
      double mean = 0.0;
      for (int k = 0; k < 5; ++k) mean += ens.member(k).forward(x)(d);
      mean /= 5.0;
      double var = 0.0;
      for (int k = 0; k < 5; ++k) {
        const double p = ens.member(k).forward(x)(d);
        var += (p - mean) * (p - mean);
      }
      var_acc += var / 5.0;
    }
    CHECK(got == doctest::Approx(var_acc / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("ama: lambda 0 reduces to pe given a shared mean head") {
  const auto train = small_train();
  lpm::AmaExplorer ama(3, 2, train, 0.0, lpm::Rng(10));
  lpm::PeCuriosity pe(3, 2, train, lpm::Rng(11));

  // graft AMA's mean head onto the PE model: same hidden stack, the PE
  // output layer keeps only the mean rows/columns
  pe.model().weights()[0] = ama.model().weights()[0];
  pe.model().biases()[0] = ama.model().biases()[0];
  pe.model().weights()[1] = ama.model().weights()[1].leftCols(3);
  pe.model().biases()[1] = ama.model().biases()[1].head(3);

  lpm::Rng probe(12);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd o(3), o2(3);
    for (int i = 0; i < 3; ++i) {
      o(i) = probe.uniform();
      o2(i) = probe.uniform();
    }
    const int a = probe.uniform_int(2);
    CHECK(ama.observe(o, a, o2) == doctest::Approx(pe.observe(o, a, o2)).epsilon(1e-12));
  }
}

TEST_CASE("ama: perfect mean with variance 0.3 and lambda 1 scores -0.3") {
  lpm::AmaExplorer ama(2, 1, small_train(), 1.0, lpm::Rng(13));
  for (auto& w : ama.model().weights()) w.setZero();
  for (auto& b : ama.model().biases()) b.setZero();
  ama.model().biases().back()(2) = std::log(0.3);  // log-variance head
  const double r = ama.observe(vec({0.4, 0.6}), 0, vec({0.0, 0.0}));
  CHECK(r == doctest::Approx(-0.3).epsilon(1e-12));
}

TEST_CASE("ama: the variance head learns the aleatoric level") {
  auto cfg = small_train();
  cfg.hidden = {16};
  cfg.minibatches_per_update = 4;
  const int dim = 16;
  lpm::AmaExplorer ama(dim, 1, cfg, 1.0, lpm::Rng(14));
  lpm::Rng noise(15);

  // constant input, uniformly noisy target: irreducible MSE = 1/12
  const Eigen::VectorXd o = Eigen::VectorXd::Constant(dim, 0.5);
  for (int t = 0; t < 1500; ++t) {
    Eigen::VectorXd target(dim);
    for (int i = 0; i < dim; ++i) target(i) = noise.uniform();
    ama.observe(o, 0, target);
    ama.update();
  }
  const double learned = ama.predict_variance(o, 0);
  CHECK(learned == doctest::Approx(1.0 / 12.0).epsilon(0.5));
}

TEST_CASE("interface battery: finite, deterministic under a fixed seed") {
  const lpm::LpmConfig lpm_cfg = [] {
    lpm::LpmConfig c;
    c.queue_size = 4;
    c.batch_size = 4;
    c.dynamics_hidden = {8};
    c.error_hidden = {8};
    return c;
  }();
  const auto train = small_train();

  for (const auto kind : {lpm::ExplorerKind::kLpm, lpm::ExplorerKind::kPe,
                          lpm::ExplorerKind::kRnd, lpm::ExplorerKind::kEnsemble,
                          lpm::ExplorerKind::kAma, lpm::ExplorerKind::kRandom}) {
    auto run = [&](std::uint64_t seed) {
      auto explorer = lpm::make_explorer(kind, 3, 2, lpm_cfg, train, lpm::Rng(seed));
      lpm::Rng probe(100);
      std::vector<double> rewards;
      for (int t = 0; t < 30; ++t) {
        Eigen::VectorXd o(3), o2(3);
        for (int i = 0; i < 3; ++i) {
          o(i) = probe.uniform();
          o2(i) = probe.uniform();
        }
        rewards.push_back(explorer->observe(o, probe.uniform_int(2), o2));
        explorer->update();
      }
      return rewards;
    };
    const auto a = run(21);
    const auto b = run(21);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::isfinite(a[i]));
      CHECK(a[i] == b[i]);  // bit-identical under the same seed
    }
  }
}
