#include "lpm/ig_oracle.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace lpm {

namespace {

constexpr double kTol = 1e-9;

double log_sum_exp(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : v) m = std::max(m, x);
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

int argmin_mse(const ParameterGrid& grid) {
  int best = 0;
  for (int i = 1; i < grid.size(); ++i) {
    if (grid.mse[i] < grid.mse[best]) best = i;  // ties keep the lowest index
  }
  return best;
}

bool mse_constant(const ParameterGrid& grid) {
  for (int i = 1; i < grid.size(); ++i) {
    if (grid.mse[i] != grid.mse[0]) return false;
  }
  return true;
}

}  // namespace

void ParameterGrid::validate() const {
  if (prior.size() != mse.size() || prior.empty()) {
    throw std::invalid_argument("ParameterGrid: prior/mse size mismatch or empty");
  }
  double sum = 0.0;
  for (double p : prior) {
    if (p < 0.0) throw std::invalid_argument("ParameterGrid: negative prior weight");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("ParameterGrid: prior sums to " + std::to_string(sum));
  }
  for (double m : mse) {
    if (!(m > 0.0)) throw std::invalid_argument("ParameterGrid: mse values must be positive");
  }
  if (!(c > 0.0)) throw std::invalid_argument("ParameterGrid: c must be positive");
}

std::vector<double> posterior(const ParameterGrid& grid) {
  grid.validate();
  const int n = grid.size();
  std::vector<double> log_w(n, -std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i) {
    if (grid.prior[i] > 0.0) {
      log_w[i] = std::log(grid.prior[i]) - grid.c * std::log(grid.mse[i]);
    }
  }
  const double lz = log_sum_exp(log_w);
  std::vector<double> post(n);
  for (int i = 0; i < n; ++i) post[i] = std::exp(log_w[i] - lz);
  return post;
}

IgResult information_gain(const ParameterGrid& grid) {
  grid.validate();
  const int n = grid.size();
  const std::vector<double> post = posterior(grid);

  IgResult result;

  // Route (a): KL(posterior || prior), zero-probability terms contribute 0.
  double kl = 0.0;
  for (int i = 0; i < n; ++i) {
    if (post[i] > 0.0) kl += post[i] * std::log(post[i] / grid.prior[i]);
  }
  result.kl_route = kl;

  // Route (b): E_post[log p(D|theta)] - log p(D), with const(D) = 0.
  std::vector<double> log_joint(n, -std::numeric_limits<double>::infinity());
  double expected_ll = 0.0;
  for (int i = 0; i < n; ++i) {
    const double ll = -grid.c * std::log(grid.mse[i]);
    if (post[i] > 0.0) expected_ll += post[i] * ll;
    if (grid.prior[i] > 0.0) log_joint[i] = std::log(grid.prior[i]) + ll;
  }
  result.definition_route = expected_ll - log_sum_exp(log_joint);
  return result;
}

const OracleCheck* OracleReport::find_check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

OracleReport intrinsic_rewards(const ParameterGrid& grid, ThetaPolicy policy) {
  grid.validate();
  const int n = grid.size();
  const std::vector<double> post = posterior(grid);

  double expected_post_ll = 0.0;
  double max_ll = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double ll = -grid.c * std::log(grid.mse[i]);
    if (post[i] > 0.0) expected_post_ll += post[i] * ll;
    max_ll = std::max(max_ll, ll);
  }

  OracleReport report;
  const int mle = argmin_mse(grid);

  if (policy == ThetaPolicy::kExactMle) {
    report.theta_d_index = mle;
    report.theta_d_found = true;
  } else {
    // Smallest-mse point that is not a likelihood maximizer yet still
    // dominates the posterior-expected log-likelihood.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return grid.mse[a] < grid.mse[b]; });
    for (int i : order) {
      if (grid.mse[i] <= grid.mse[mle]) continue;  // skip every maximizer
      const double ll = -grid.c * std::log(grid.mse[i]);
      if (ll >= expected_post_ll) {
        report.theta_d_index = i;
        report.theta_d_found = true;
        break;
      }
    }
    if (!report.theta_d_found) return report;  // instance skipped by caller
  }

  const double log_mse_d = std::log(grid.mse[report.theta_d_index]);
  const double theta_d_ll = -grid.c * log_mse_d;

  double prior_expected_log_mse = 0.0;
  for (int i = 0; i < n; ++i) prior_expected_log_mse += grid.prior[i] * std::log(grid.mse[i]);
  report.r_exp = prior_expected_log_mse - log_mse_d;

  report.r_point.resize(n);
  for (int i = 0; i < n; ++i) report.r_point[i] = std::log(grid.mse[i]) - log_mse_d;

  const IgResult ig = information_gain(grid);
  report.ig = ig.kl_route;

  report.checks.push_back({"kl_identity", std::abs(ig.difference()) < kTol,
                           kTol - std::abs(ig.difference())});
  // theta_D condition: log p(D|theta_D) >= E_post[log p(D|theta)]
  report.checks.push_back({"theta_d_condition", theta_d_ll >= expected_post_ll - kTol,
                           theta_d_ll - expected_post_ll});
  // Lemma: the maximum log-likelihood dominates its posterior average.
  report.checks.push_back({"mle_dominance", max_ll >= expected_post_ll - kTol,
                           max_ll - expected_post_ll});
  // Monotone bound: c * r_exp >= IG.
  const double monotone_margin = grid.c * report.r_exp - report.ig;
  report.checks.push_back({"monotone_bound", monotone_margin >= -kTol, monotone_margin});
  return report;
}

ParameterGrid random_grid(Rng& rng, const TheoremOptions& options) {
  ParameterGrid grid;
  const int n = options.min_grid + rng.uniform_int(options.max_grid - options.min_grid + 1);
  grid.prior.resize(n);
  grid.mse.resize(n);

  // Dirichlet(1) prior via normalized exponentials.
  double sum = 0.0;
  for (double& p : grid.prior) {
    p = -std::log(1.0 - rng.uniform());
    sum += p;
  }
  for (double& p : grid.prior) p /= sum;
  // Renormalize exactly so validate()'s 1e-12 budget holds.
  double check = 0.0;
  for (int i = 0; i + 1 < n; ++i) check += grid.prior[i];
  grid.prior[n - 1] = 1.0 - check;

  for (double& m : grid.mse) {
    m = std::pow(10.0, rng.uniform(options.mse_log10_lo, options.mse_log10_hi));
  }
  grid.c = std::exp(rng.uniform(std::log(options.c_lo), std::log(options.c_hi)));
  return grid;
}

TheoremSummary check_theorems(int instance_count, Rng& rng, const TheoremOptions& options) {
  if (instance_count < 1) {
    throw std::invalid_argument("check_theorems: instance_count must be >= 1");
  }
  const auto start = std::chrono::steady_clock::now();

  TheoremSummary summary;
  summary.min_monotone_margin = std::numeric_limits<double>::infinity();
  summary.min_mle_dominance_margin = std::numeric_limits<double>::infinity();

  for (int k = 0; k < instance_count; ++k) {
    ParameterGrid grid;
    bool constant_instance = false;
    if (options.constant_grid_every > 0 && k % options.constant_grid_every == 1) {
      grid = random_grid(rng, options);
      const double m = grid.mse[0];
      for (double& v : grid.mse) v = m;
      constant_instance = true;
    } else if (options.perturbed_grid_every > 0 && k % options.perturbed_grid_every == 2) {
      grid = random_grid(rng, options);
      const double m = grid.mse[0];
      for (double& v : grid.mse) v = m * (1.0 + 1e-8 * rng.uniform(-1.0, 1.0));
    } else {
      grid = random_grid(rng, options);
    }
    summary.instances += 1;

    const IgResult ig = information_gain(grid);
    const double gap = std::abs(ig.difference());
    summary.max_kl_identity_gap = std::max(summary.max_kl_identity_gap, gap);
    if (gap >= kTol) {
      summary.kl_identity_failures += 1;
      summary.failed_checks.push_back("kl_identity");
      summary.counterexample_grids.push_back(grid);
    }

    OracleReport exact = intrinsic_rewards(grid, ThetaPolicy::kExactMle);

    double monotone_margin = grid.c * exact.r_exp - exact.ig;
    if (options.corrupt_monotone_check) {
      // Self-test hook: flips the bound's sign so the failure path runs.
      monotone_margin = -monotone_margin - 1e-6;
    }
    summary.min_monotone_margin = std::min(summary.min_monotone_margin, monotone_margin);
    if (monotone_margin < -kTol) {
      summary.monotone_bound_failures += 1;
      summary.failed_checks.push_back("monotone_bound");
      summary.counterexample_grids.push_back(grid);
    }

    const OracleCheck* dominance = exact.find_check("mle_dominance");
    summary.min_mle_dominance_margin =
        std::min(summary.min_mle_dominance_margin, dominance->margin);
    if (!dominance->pass) {
      summary.mle_dominance_failures += 1;
      summary.failed_checks.push_back("mle_dominance");
      summary.counterexample_grids.push_back(grid);
    }

    // Exact MLE minimizes mse, so no pointwise reward may be negative.
    for (double rp : exact.r_point) {
      if (rp < -kTol) {
        summary.mle_negative_pointwise += 1;
        summary.failed_checks.push_back("mle_pointwise_nonnegative");
        summary.counterexample_grids.push_back(grid);
        break;
      }
    }

    // Zero equivalence. Constant instances must land at IG = 0 = r_exp;
    // any instance with r_exp ~ 0 must also have IG ~ 0.
    if (constant_instance) {
      if (std::abs(exact.r_exp) > 1e-12 || exact.ig > kTol) {
        summary.zero_equivalence_failures += 1;
        summary.failed_checks.push_back("zero_equivalence_constant");
        summary.counterexample_grids.push_back(grid);
      }
    }
    if (std::abs(exact.r_exp) < 1e-12 && exact.ig > kTol) {
      summary.zero_equivalence_failures += 1;
      summary.failed_checks.push_back("zero_equivalence_reverse");
      summary.counterexample_grids.push_back(grid);
    }

    // Pointwise negativity with positive IG is only reachable when
    // theta_D is below the maximizer.
    OracleReport sub = intrinsic_rewards(grid, ThetaPolicy::kConditionSatisfyingSubmaximal);
    if (sub.theta_d_found) {
      summary.submaximal_instances += 1;
      bool negative_point = false;
      for (double rp : sub.r_point) {
        if (rp < -kTol) {
          negative_point = true;
          break;
        }
      }
      if (negative_point && sub.ig > kTol) summary.t2_counterexamples += 1;
    }
  }

  summary.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

std::string grid_to_json(const ParameterGrid& grid) {
  nlohmann::json j;
  j["prior"] = grid.prior;
  j["mse"] = grid.mse;
  j["c"] = grid.c;
  return j.dump();
}

ParameterGrid grid_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ParameterGrid grid;
  grid.prior = j.at("prior").get<std::vector<double>>();
  grid.mse = j.at("mse").get<std::vector<double>>();
  grid.c = j.at("c").get<double>();
  return grid;
}

}  // namespace lpm
