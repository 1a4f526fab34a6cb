#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lpm/rng.hpp"

namespace lpm {

/// Finite parameter grid: abstract points theta_i with prior weights,
/// a positive MSE value per point, and the likelihood exponent c, so that
/// log p(D | theta_i) = -c * log mse_i (the dataset-constant term cancels
/// in every quantity computed here and is fixed to zero).
struct ParameterGrid {
  std::vector<double> prior;  // sums to 1
  std::vector<double> mse;    // all > 0
  double c = 1.0;             // > 0; the Gaussian i.i.d. MLE case has c = n/2

  int size() const { return static_cast<int>(prior.size()); }
  void validate() const;
};

/// Posterior over the grid: prior_i * mse_i^(-c), normalized. Computed in
/// log space with max subtraction.
std::vector<double> posterior(const ParameterGrid& grid);

/// Information gain computed two independent ways.
struct IgResult {
  double kl_route = 0.0;          // KL(posterior || prior)
  double definition_route = 0.0;  // E_post[log p(D|theta)] - log p(D)
  double difference() const { return kl_route - definition_route; }
};

IgResult information_gain(const ParameterGrid& grid);

enum class ThetaPolicy {
  kExactMle,                      // argmin mse, ties to the lowest index
  kConditionSatisfyingSubmaximal  // non-MLE point still satisfying the
                                  // posterior-expected log-likelihood bound
};

struct OracleCheck {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // >= 0 means satisfied, by how much
};

struct OracleReport {
  double ig = 0.0;
  double r_exp = 0.0;
  std::vector<double> r_point;
  int theta_d_index = -1;
  bool theta_d_found = false;  // submaximal policy may find no qualifying point
  std::vector<OracleCheck> checks;

  const OracleCheck* find_check(const std::string& name) const;
};

/// Expectation and pointwise rewards for a grid under a theta_D policy,
/// with the theta_D condition and the bound c * r_exp >= IG checked and
/// recorded with margins.
OracleReport intrinsic_rewards(const ParameterGrid& grid, ThetaPolicy policy);

struct TheoremSummary {
  int instances = 0;
  int kl_identity_failures = 0;
  int monotone_bound_failures = 0;   // T1.1
  int zero_equivalence_failures = 0; // T1.2 + T1.3
  int mle_dominance_failures = 0;    // L1
  int mle_negative_pointwise = 0;    // must stay 0: exact MLE never yields r_point < 0
  int submaximal_instances = 0;      // instances where the submaximal policy found theta_D
  int t2_counterexamples = 0;        // r_point < 0 while IG > 0 under submaximal theta_D
  double max_kl_identity_gap = 0.0;
  double min_monotone_margin = 0.0;
  double min_mle_dominance_margin = 0.0;
  double seconds = 0.0;
  std::vector<std::string> failed_checks;        // named failures
  std::vector<ParameterGrid> counterexample_grids;

  bool all_pass() const {
    return kl_identity_failures == 0 && monotone_bound_failures == 0 &&
           zero_equivalence_failures == 0 && mle_dominance_failures == 0 &&
           mle_negative_pointwise == 0 && t2_counterexamples > 0;
  }
};

struct TheoremOptions {
  int min_grid = 2;
  int max_grid = 100;
  double mse_log10_lo = -3.0;
  double mse_log10_hi = 3.0;
  double c_lo = 0.5;
  double c_hi = 50.0;
  int constant_grid_every = 25;   // inject a constant-mse instance every k-th draw
  int perturbed_grid_every = 40;  // near-constant mse instance cadence
  bool corrupt_monotone_check = false;  // harness self-test hook
};

/// Draws random grids and checks, exactly, on every instance: the KL
/// identity (two IG routes agree), the monotone bound under exact MLE,
/// MLE dominance over the posterior-expected log-likelihood, zero
/// equivalence on (near-)constant instances, and nonnegativity of every
/// pointwise reward under exact MLE. Also hunts for pointwise-negative /
/// positive-IG instances under the submaximal policy; finding at least one
/// is itself part of the contract.
TheoremSummary check_theorems(int instance_count, Rng& rng,
                              const TheoremOptions& options = {});

ParameterGrid random_grid(Rng& rng, const TheoremOptions& options);

std::string grid_to_json(const ParameterGrid& grid);
ParameterGrid grid_from_json(const std::string& text);

}  // namespace lpm
