#include "comptest/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include <nlohmann/json.hpp>

#include "comptest/error.hpp"
#include "comptest/parallel.hpp"

namespace comptest {

namespace {

// Substream tags keep covariance construction, signal supports, the two
// sample groups, and permutations on disjoint streams.
constexpr std::uint64_t kTagCovariance = 0xC0;
constexpr std::uint64_t kTagSignal = 0x51;
constexpr std::uint64_t kTagGroup1 = 0x61;
constexpr std::uint64_t kTagGroup2 = 0x62;
constexpr std::uint64_t kTagPermutation = 0x9E;

void validate_scenario(const ScenarioConfig& cfg) {
  if (cfg.n1 < 2 || cfg.n2 < 2) {
    throw UsageError("each group needs at least two samples");
  }
  if (cfg.p < 3) {
    throw UsageError("scenario dimension must be at least 3");
  }
  if (cfg.replications < 1) {
    throw UsageError("replication count must be at least 1");
  }
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw UsageError("alpha must lie strictly between 0 and 1");
  }
  validate_weights(cfg.weights);
}

Eigen::MatrixXd build_covariance(const ScenarioConfig& cfg,
                                 std::uint64_t scenario_hash) {
  if (cfg.cov.family == CovFamily::ar1) {
    return build_ar1(cfg.p, cfg.cov.rho);
  }
  RngStream cov_rng(cfg.master_seed,
                    derive_stream(scenario_hash, kTagCovariance));
  return build_block_sparse(cfg.p, cov_rng);
}

double rate(int count, int total) {
  return static_cast<double>(count) / static_cast<double>(total);
}

}  // namespace

std::vector<ReplicationOutcome> run_replications(const ScenarioConfig& cfg,
                                                 int threads) {
  validate_scenario(cfg);
  const std::uint64_t scenario_hash = hash_label(scenario_key(cfg));
  const Eigen::MatrixXd cov = build_covariance(cfg, scenario_hash);
  const Eigen::MatrixXd factor = covariance_factor(cfg.framework, cov);

  std::vector<ReplicationOutcome> outcomes(
      static_cast<std::size_t>(cfg.replications));
  parallel_for(cfg.replications, threads, [&](int r) {
    ReplicationOutcome& out = outcomes[static_cast<std::size_t>(r)];
    try {
      RngStream signal_rng(
          cfg.master_seed,
          derive_stream(scenario_hash, kTagSignal,
                        static_cast<std::uint64_t>(r)));
      const SignalPair signal =
          build_signal(cfg.signal, cfg.p, cov, signal_rng);

      RngStream g1(cfg.master_seed,
                   derive_stream(scenario_hash, kTagGroup1,
                                 static_cast<std::uint64_t>(r)));
      RngStream g2(cfg.master_seed,
                   derive_stream(scenario_hash, kTagGroup2,
                                 static_cast<std::uint64_t>(r)));
      Eigen::MatrixXd x = to_clr_samples(
          sample_log_basis(cfg.framework, signal.nu1, factor, cfg.n1, g1));
      Eigen::MatrixXd y = to_clr_samples(
          sample_log_basis(cfg.framework, signal.nu2, factor, cfg.n2, g2));
      const TwoSampleClr d =
          TwoSampleClr::from_data(std::move(x), std::move(y));

      const TestBattery battery = run_all_tests(d, cfg.alpha, cfg.weights);
      out.m_stat = battery.max.statistic;
      out.q_stat = battery.quad.statistic;
      out.p_m = battery.max.p_value;
      out.p_q = battery.quad.p_value;
      out.fisher_stat = battery.fisher.statistic;
      out.cauchy_stat = battery.cauchy.statistic;
      out.reject_max = battery.max.reject;
      out.reject_quad = battery.quad.reject;
      out.reject_fisher = battery.fisher.reject;
      out.reject_cauchy = battery.cauchy.reject;
    } catch (const Error&) {
      out.failed = true;
    }
  });
  return outcomes;
}

double MethodRates::by(Method m) const {
  switch (m) {
    case Method::max:
      return max;
    case Method::quad:
      return quad;
    case Method::fisher:
      return fisher;
    case Method::cauchy:
      return cauchy;
  }
  return 0;  // unreachable
}

ScenarioResult run_scenario(const ScenarioConfig& cfg, int threads) {
  const std::vector<ReplicationOutcome> outcomes =
      run_replications(cfg, threads);

  ScenarioResult result;
  result.replications = cfg.replications;
  int n_max = 0, n_quad = 0, n_fisher = 0, n_cauchy = 0;
  for (const ReplicationOutcome& out : outcomes) {
    if (out.failed) {
      ++result.errors;
      continue;
    }
    n_max += out.reject_max;
    n_quad += out.reject_quad;
    n_fisher += out.reject_fisher;
    n_cauchy += out.reject_cauchy;
  }
  result.rates.max = rate(n_max, cfg.replications);
  result.rates.quad = rate(n_quad, cfg.replications);
  result.rates.fisher = rate(n_fisher, cfg.replications);
  result.rates.cauchy = rate(n_cauchy, cfg.replications);
  return result;
}

std::string RejectionTable::to_csv() const {
  std::string out =
      "cov_family,framework,n1,n2,p,sparsity,replications,alpha,"
      "max,quad,fisher,cauchy,errors,master_seed\n";
  char line[512];
  for (const RejectionRow& row : rows) {
    std::snprintf(line, sizeof(line),
                  "%s,%s,%lld,%lld,%lld,%.9g,%d,%.9g,"
                  "%.6f,%.6f,%.6f,%.6f,%d,%llu\n",
                  row.cov_family.c_str(), row.framework.c_str(),
                  static_cast<long long>(row.n1),
                  static_cast<long long>(row.n2),
                  static_cast<long long>(row.p), row.sparsity,
                  row.replications, row.alpha, row.rates.max, row.rates.quad,
                  row.rates.fisher, row.rates.cauchy, row.errors,
                  static_cast<unsigned long long>(master_seed));
    out += line;
  }
  return out;
}

nlohmann::json RejectionTable::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const RejectionRow& row : rows) {
    rows_json.push_back({{"cov_family", row.cov_family},
                         {"framework", row.framework},
                         {"n1", row.n1},
                         {"n2", row.n2},
                         {"p", row.p},
                         {"sparsity", row.sparsity},
                         {"replications", row.replications},
                         {"alpha", row.alpha},
                         {"rates",
                          {{"max", row.rates.max},
                           {"quad", row.rates.quad},
                           {"fisher", row.rates.fisher},
                           {"cauchy", row.rates.cauchy}}},
                         {"errors", row.errors}});
  }
  return nlohmann::json{{"schema_version", 1},
                        {"master_seed", master_seed},
                        {"rows", rows_json}};
}

int RejectionTable::total_errors() const {
  int total = 0;
  for (const RejectionRow& row : rows) {
    total += row.errors;
  }
  return total;
}

RejectionTable run_grid(const std::vector<ScenarioConfig>& cfgs, int threads) {
  if (cfgs.empty()) {
    throw UsageError("the scenario grid is empty");
  }
  RejectionTable table;
  table.master_seed = cfgs.front().master_seed;
  for (const ScenarioConfig& cfg : cfgs) {
    const ScenarioResult result = run_scenario(cfg, threads);
    RejectionRow row;
    row.cov_family = std::string(family_name(cfg.cov.family));
    row.framework = std::string(framework_name(cfg.framework));
    row.n1 = cfg.n1;
    row.n2 = cfg.n2;
    row.p = cfg.p;
    row.sparsity = cfg.signal.sparsity_fraction;
    row.replications = result.replications;
    row.alpha = cfg.alpha;
    row.rates = result.rates;
    row.errors = result.errors;
    table.rows.push_back(std::move(row));
  }
  return table;
}

PermutationStudy permutation_size_study(const TwoSampleClr& d,
                                        Eigen::Index n1, Eigen::Index n2,
                                        int n_perms, double alpha,
                                        const RngStream& rng, int threads) {
  const Eigen::Index pooled_n = d.n1() + d.n2();
  if (n1 + n2 != pooled_n) {
    throw UsageError("permutation split must sum to the pooled sample count");
  }
  if (n1 < 2 || n2 < 2) {
    throw UsageError("each permutation group needs at least two samples");
  }
  if (n_perms < 1) {
    throw UsageError("permutation count must be at least 1");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw UsageError("alpha must lie strictly between 0 and 1");
  }

  Eigen::MatrixXd pooled(pooled_n, d.p());
  pooled.topRows(d.n1()) = d.x();
  pooled.bottomRows(d.n2()) = d.y();

  std::vector<ReplicationOutcome> outcomes(
      static_cast<std::size_t>(n_perms));
  parallel_for(n_perms, threads, [&](int iter) {
    ReplicationOutcome& out = outcomes[static_cast<std::size_t>(iter)];
    try {
      RngStream perm_rng(rng.seed(),
                         derive_stream(rng.stream_id(), kTagPermutation,
                                       static_cast<std::uint64_t>(iter)));
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(pooled_n));
      std::iota(idx.begin(), idx.end(), Eigen::Index{0});
      for (Eigen::Index i = 0; i < n1; ++i) {
        const auto j = i + static_cast<Eigen::Index>(perm_rng.below(
                               static_cast<std::uint64_t>(pooled_n - i)));
        std::swap(idx[static_cast<std::size_t>(i)],
                  idx[static_cast<std::size_t>(j)]);
      }

      Eigen::MatrixXd x(n1, d.p());
      Eigen::MatrixXd y(n2, d.p());
      for (Eigen::Index i = 0; i < n1; ++i) {
        x.row(i) = pooled.row(idx[static_cast<std::size_t>(i)]);
      }
      for (Eigen::Index i = 0; i < n2; ++i) {
        y.row(i) = pooled.row(idx[static_cast<std::size_t>(n1 + i)]);
      }

      const TwoSampleClr split =
          TwoSampleClr::from_data(std::move(x), std::move(y));
      const TestBattery battery = run_all_tests(split, alpha);
      out.reject_max = battery.max.reject;
      out.reject_quad = battery.quad.reject;
      out.reject_fisher = battery.fisher.reject;
      out.reject_cauchy = battery.cauchy.reject;
    } catch (const Error&) {
      out.failed = true;
    }
  });

  PermutationStudy study;
  study.n_perms = n_perms;
  study.alpha = alpha;
  study.n1 = n1;
  study.n2 = n2;
  int n_max = 0, n_quad = 0, n_fisher = 0, n_cauchy = 0;
  for (const ReplicationOutcome& out : outcomes) {
    if (out.failed) {
      ++study.errors;
      continue;
    }
    n_max += out.reject_max;
    n_quad += out.reject_quad;
    n_fisher += out.reject_fisher;
    n_cauchy += out.reject_cauchy;
  }
  study.rates.max = rate(n_max, n_perms);
  study.rates.quad = rate(n_quad, n_perms);
  study.rates.fisher = rate(n_fisher, n_perms);
  study.rates.cauchy = rate(n_cauchy, n_perms);
  return study;
}

IndependenceReport independence_diagnostic(const ScenarioConfig& cfg,
                                           const std::vector<double>& alphas,
                                           int threads) {
  if (cfg.signal.sparsity_fraction != 0.0) {
    throw UsageError("the independence diagnostic requires a null scenario");
  }
  if (alphas.empty()) {
    throw UsageError("the independence diagnostic needs at least one alpha");
  }

  const std::vector<ReplicationOutcome> outcomes =
      run_replications(cfg, threads);

  IndependenceReport report;
  report.replications = cfg.replications;

  const double log_p = std::log(static_cast<double>(cfg.p));
  const double centering = 2.0 * log_p - std::log(log_p);

  std::vector<double> qs;
  std::vector<double> ms;
  for (const ReplicationOutcome& out : outcomes) {
    if (out.failed) {
      ++report.errors;
      continue;
    }
    qs.push_back(out.q_stat);
    ms.push_back(out.m_stat - centering);
  }
  const int n_ok = static_cast<int>(qs.size());

  for (const double alpha : alphas) {
    IndependenceCell cell;
    cell.alpha = alpha;
    int c_q = 0, c_m = 0, c_joint = 0;
    for (const ReplicationOutcome& out : outcomes) {
      if (out.failed) {
        continue;
      }
      const bool hit_q = out.p_q <= alpha;
      const bool hit_m = out.p_m <= alpha;
      c_q += hit_q;
      c_m += hit_m;
      c_joint += hit_q && hit_m;
    }
    if (n_ok > 0) {
      cell.rate_q = rate(c_q, n_ok);
      cell.rate_m = rate(c_m, n_ok);
      cell.rate_joint = rate(c_joint, n_ok);
      if (c_q + c_m > 0) {
        cell.ratio = cell.rate_joint / (cell.rate_q + cell.rate_m);
        cell.defined = true;
      }
    }
    report.cells.push_back(cell);
  }

  if (n_ok > 1) {
    const double mean_q = std::accumulate(qs.begin(), qs.end(), 0.0) / n_ok;
    const double mean_m = std::accumulate(ms.begin(), ms.end(), 0.0) / n_ok;
    double cov = 0.0, var_q = 0.0, var_m = 0.0;
    for (int i = 0; i < n_ok; ++i) {
      const double dq = qs[static_cast<std::size_t>(i)] - mean_q;
      const double dm = ms[static_cast<std::size_t>(i)] - mean_m;
      cov += dq * dm;
      var_q += dq * dq;
      var_m += dm * dm;
    }
    if (var_q > 0.0 && var_m > 0.0) {
      report.statistic_correlation = cov / std::sqrt(var_q * var_m);
    }
  }
  return report;
}

PowerRegionResult power_region_check(const ScenarioConfig& cfg,
                                     AlternativeRegion region, double eps0,
                                     int threads) {
  if (!(eps0 > 0.0)) {
    throw UsageError("eps0 must be positive");
  }
  validate_scenario(cfg);

  const std::uint64_t scenario_hash = hash_label(scenario_key(cfg));
  const Eigen::MatrixXd cov = build_covariance(cfg, scenario_hash);

  // A = G Omega~ G with Omega~ = (1 + n1/n2) Omega.
  const double scale =
      1.0 + static_cast<double>(cfg.n1) / static_cast<double>(cfg.n2);
  const Eigen::MatrixXd g = centering_projection(cfg.p);
  const Eigen::MatrixXd a = scale * (g * cov * g);
  const double trace_a_sq = a.squaredNorm();
  const Eigen::VectorXd a_diag = a.diagonal();

  const double log_n =
      std::log(static_cast<double>(cfg.n1) + static_cast<double>(cfg.n2));
  const double sparse_bound =
      std::sqrt((2.0 + eps0) * std::log(static_cast<double>(cfg.p)) /
                static_cast<double>(cfg.n1));
  const double dense_bound = eps0 * log_n;

  PowerRegionResult result;
  result.min_region_margin = std::numeric_limits<double>::infinity();
  // A zero signal reduces the check to a size run; no region to certify.
  const bool has_signal = cfg.signal.sparsity_fraction > 0.0;
  for (int r = 0; has_signal && r < cfg.replications; ++r) {
    RngStream signal_rng(cfg.master_seed,
                         derive_stream(scenario_hash, kTagSignal,
                                       static_cast<std::uint64_t>(r)));
    const SignalPair signal = build_signal(cfg.signal, cfg.p, cov, signal_rng);
    const Eigen::VectorXd mu = signal.nu2 - signal.nu1;
    const Eigen::VectorXd g_mu = mu.array() - mu.mean();

    double margin;
    if (region == AlternativeRegion::sparse) {
      const double achieved =
          (g_mu.array().abs() / a_diag.array().sqrt()).maxCoeff();
      margin = achieved / sparse_bound;
    } else {
      const double norm_sq = g_mu.squaredNorm();
      const double quad_form = mu.dot(a * mu);
      const double n1 = static_cast<double>(cfg.n1);
      const double achieved =
          n1 * n1 * norm_sq * norm_sq / (n1 * quad_form + trace_a_sq);
      margin = achieved / dense_bound;
    }
    result.min_region_margin = std::min(result.min_region_margin, margin);
  }
  if (!has_signal) {
    result.min_region_margin = 0.0;
  } else if (result.min_region_margin < 1.0) {
    throw UsageError(
        "scenario signal does not satisfy the requested alternative region");
  }

  const ScenarioResult rates = run_scenario(cfg, threads);
  result.fisher_rate = rates.rates.fisher;
  result.quad_rate = rates.rates.quad;
  result.max_rate = rates.rates.max;
  result.errors = rates.errors;
  return result;
}

}  // namespace comptest
