// simgen.hpp
// Simulation designs: covariance families, calibrated mean signals, and
// log-basis samplers for the Gaussian and gamma data-generating frameworks.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "comptest/combine.hpp"
#include "comptest/rng.hpp"

namespace comptest {

enum class CovFamily { ar1, block_sparse };
enum class Framework { gaussian, gamma };

std::string_view family_name(CovFamily f) noexcept;
std::string_view framework_name(Framework f) noexcept;

struct CovarianceSpec {
  CovFamily family = CovFamily::ar1;
  double rho = 0.5;  // ar1 only
};

struct SignalSpec {
  double sparsity_fraction = 0.0;  // fraction of nonzero mean coordinates
  double target_ratio = 0.1;       // ||nu2||^2 / sqrt(tr(Omega^2))
};

// One simulation cell. Streams for covariance, signal support, and sampling
// are derived from (master_seed, scenario_key, replication index).
struct ScenarioConfig {
  Framework framework = Framework::gaussian;
  CovarianceSpec cov;
  Eigen::Index n1 = 0;
  Eigen::Index n2 = 0;
  Eigen::Index p = 0;
  SignalSpec signal;
  double alpha = 0.05;
  int replications = 1;
  std::uint64_t master_seed = 0;
  CombinationWeights weights;
};

// Stable textual key identifying the cell (excludes alpha and replications,
// so the same draws serve any level and any replication count prefix).
std::string scenario_key(const ScenarioConfig& cfg);

// AR(1) covariance: entry (i, j) = rho^|i-j|.
Eigen::MatrixXd build_ar1(Eigen::Index p, double rho);

// Block covariance: top-left q x q block B + eps I with q = floor(3 sqrt(p)),
// B symmetric with zero diagonal and each off-diagonal entry zero with
// probability 1/2, otherwise uniform on [-1,-0.5] or [0.5,1]; the rest is
// the identity. eps = max(-lambda_min(B), 0) + 0.05.
Eigen::MatrixXd build_block_sparse(Eigen::Index p, RngStream& rng);

struct SignalPair {
  Eigen::VectorXd nu1;
  Eigen::VectorXd nu2;
  std::vector<Eigen::Index> support;  // sorted nonzero coordinates of nu2
};

// nu1 = 0; round(fraction * p) coordinates of nu2, chosen uniformly without
// replacement, are set to a = sqrt(target_ratio * sqrt(tr(cov^2)) / s).
SignalPair build_signal(const SignalSpec& spec, Eigen::Index p,
                        const Eigen::MatrixXd& cov, RngStream& rng);

// Lower-triangular L with L L^T = cov.
Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& cov);

// Q S^{1/2} from the symmetric eigendecomposition cov = Q S Q^T.
Eigen::MatrixXd sym_eigen_factor(const Eigen::MatrixXd& cov);

// Factor used by sample_log_basis: Cholesky for the Gaussian framework,
// the eigendecomposition factor for the gamma framework.
Eigen::MatrixXd covariance_factor(Framework fw, const Eigen::MatrixXd& cov);

// Gaussian rows: nu + F z with z iid standard normal. Gamma rows:
// nu + F (u - shape) / sqrt(shape) with u iid Gamma(shape = 10, 1), centered
// so every row has mean nu. The caller guarantees F F^T = Omega.
Eigen::MatrixXd sample_log_basis(Framework fw, const Eigen::VectorXd& nu,
                                 const Eigen::MatrixXd& cov_factor,
                                 Eigen::Index n, RngStream& rng);

// Centers each row by its own mean, i.e. applies G = I - (1/p) 11^T.
Eigen::MatrixXd to_clr_samples(const Eigen::MatrixXd& log_basis);

inline constexpr double kGammaShape = 10.0;

}  // namespace comptest
