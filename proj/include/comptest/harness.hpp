// harness.hpp
// Monte Carlo experiment runner: rejection-rate grids, permutation null
// studies, and the independence diagnostic between the two base tests.
// Replications run in parallel over pre-derived streams, so every output is
// identical for any thread count.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "comptest/simgen.hpp"
#include "comptest/two_sample.hpp"

#include <nlohmann/json_fwd.hpp>

namespace comptest {

struct ReplicationOutcome {
  double m_stat = 0;
  double q_stat = 0;
  double p_m = 1;
  double p_q = 1;
  double fisher_stat = 0;
  double cauchy_stat = 0;
  bool reject_max = false;
  bool reject_quad = false;
  bool reject_fisher = false;
  bool reject_cauchy = false;
  bool failed = false;  // a component error aborted this replication
};

// One outcome per replication, in replication order.
std::vector<ReplicationOutcome> run_replications(const ScenarioConfig& cfg,
                                                 int threads = 1);

struct MethodRates {
  double max = 0;
  double quad = 0;
  double fisher = 0;
  double cauchy = 0;

  double by(Method m) const;
};

struct ScenarioResult {
  MethodRates rates;  // rejection fraction out of all replications
  int replications = 0;
  int errors = 0;  // failed replications; must be 0 in healthy runs
};

ScenarioResult run_scenario(const ScenarioConfig& cfg, int threads = 1);

struct RejectionRow {
  std::string cov_family;
  std::string framework;
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;
  Eigen::Index p = 0;
  double sparsity = 0;
  int replications = 0;
  double alpha = 0;
  MethodRates rates;
  int errors = 0;
};

struct RejectionTable {
  std::uint64_t master_seed = 0;
  std::vector<RejectionRow> rows;

  std::string to_csv() const;
  nlohmann::json to_json() const;
  int total_errors() const;
};

// Runs every scenario and concatenates rows in input order.
RejectionTable run_grid(const std::vector<ScenarioConfig>& cfgs,
                        int threads = 1);

struct PermutationStudy {
  int n_perms = 0;
  double alpha = 0;
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;
  MethodRates rates;
  int errors = 0;
};

// Pools both groups of d, then repeatedly splits the pooled rows into
// random groups of sizes (n1, n2) and runs all four tests.
PermutationStudy permutation_size_study(const TwoSampleClr& d,
                                        Eigen::Index n1, Eigen::Index n2,
                                        int n_perms, double alpha,
                                        const RngStream& rng,
                                        int threads = 1);

struct IndependenceCell {
  double alpha = 0;
  double rate_q = 0;      // P(p_Q <= alpha)
  double rate_m = 0;      // P(p_M <= alpha)
  double rate_joint = 0;  // P(p_Q <= alpha, p_M <= alpha)
  double ratio = 0;       // rate_joint / (rate_q + rate_m)
  bool defined = false;   // false when the denominator is zero
};

struct IndependenceReport {
  std::vector<IndependenceCell> cells;
  double statistic_correlation = 0;  // corr(Q, M - 2 log p + log log p)
  int replications = 0;
  int errors = 0;
};

// Requires a null config (zero signal fraction).
IndependenceReport independence_diagnostic(const ScenarioConfig& cfg,
                                           const std::vector<double>& alphas,
                                           int threads = 1);

enum class AlternativeRegion { dense, sparse };

struct PowerRegionResult {
  double fisher_rate = 0;
  double quad_rate = 0;
  double max_rate = 0;
  // Smallest over replications of (achieved bound value) / (required bound);
  // >= 1 certifies every drawn signal lies in the stated region.
  double min_region_margin = 0;
  int errors = 0;
};

// Verifies each replication's signal satisfies the dense or sparse
// alternative bound for the given eps0, then reports rejection rates.
PowerRegionResult power_region_check(const ScenarioConfig& cfg,
                                     AlternativeRegion region, double eps0,
                                     int threads = 1);

}  // namespace comptest
