#include "comptest/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "comptest/error.hpp"

namespace comptest {

std::string_view family_name(CovFamily f) noexcept {
  return f == CovFamily::ar1 ? "ar1" : "block_sparse";
}

std::string_view framework_name(Framework f) noexcept {
  return f == Framework::gaussian ? "gaussian" : "gamma";
}

std::string scenario_key(const ScenarioConfig& cfg) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "fw=%s;cov=%s;rho=%.9g;n1=%lld;n2=%lld;p=%lld;sparsity=%.9g;"
                "ratio=%.9g",
                framework_name(cfg.framework).data(),
                family_name(cfg.cov.family).data(),
                cfg.cov.family == CovFamily::ar1 ? cfg.cov.rho : 0.0,
                static_cast<long long>(cfg.n1), static_cast<long long>(cfg.n2),
                static_cast<long long>(cfg.p), cfg.signal.sparsity_fraction,
                cfg.signal.target_ratio);
  return std::string(buf);
}

Eigen::MatrixXd build_ar1(Eigen::Index p, double rho) {
  if (p < 1) {
    throw UsageError("covariance dimension must be at least 1");
  }
  if (!(std::abs(rho) < 1.0)) {
    throw UsageError("AR(1) correlation must satisfy |rho| < 1");
  }
  Eigen::MatrixXd cov(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    cov(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = std::pow(rho, static_cast<double>(i - j));
      cov(i, j) = v;
      cov(j, i) = v;
    }
  }
  return cov;
}

Eigen::MatrixXd build_block_sparse(Eigen::Index p, RngStream& rng) {
  if (p < 9) {
    throw UsageError("block-sparse covariance requires p >= 9");
  }
  const auto q = static_cast<Eigen::Index>(
      std::floor(3.0 * std::sqrt(static_cast<double>(p))));

  // Symmetric B with zero diagonal; each lower-triangular entry is zero with
  // probability 1/2, otherwise uniform on [-1,-0.5] or [0.5,1].
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(q, q);
  for (Eigen::Index i = 1; i < q; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (rng.uniform01() < 0.5) {
        continue;
      }
      const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
      const double magnitude = 0.5 + 0.5 * rng.uniform01();
      b(i, j) = sign * magnitude;
      b(j, i) = b(i, j);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b,
                                                        Eigen::EigenvaluesOnly);
  const double lambda_min = solver.eigenvalues().minCoeff();
  const double eps = std::max(-lambda_min, 0.0) + 0.05;

  Eigen::MatrixXd cov = Eigen::MatrixXd::Identity(p, p);
  cov.topLeftCorner(q, q) = b;
  cov.topLeftCorner(q, q).diagonal().array() += eps;
  return cov;
}

SignalPair build_signal(const SignalSpec& spec, Eigen::Index p,
                        const Eigen::MatrixXd& cov, RngStream& rng) {
  if (p < 1 || cov.rows() != p || cov.cols() != p) {
    throw UsageError("signal dimension does not match the covariance");
  }
  if (!(spec.sparsity_fraction >= 0.0 && spec.sparsity_fraction <= 1.0)) {
    throw UsageError("sparsity fraction must lie in [0, 1]");
  }
  if (!(spec.target_ratio > 0.0)) {
    throw UsageError("signal target ratio must be positive");
  }

  SignalPair signal;
  signal.nu1 = Eigen::VectorXd::Zero(p);
  signal.nu2 = Eigen::VectorXd::Zero(p);
  if (spec.sparsity_fraction == 0.0) {
    return signal;
  }

  const auto s = static_cast<Eigen::Index>(
      std::llround(spec.sparsity_fraction * static_cast<double>(p)));
  if (s < 1) {
    throw UsageError(
        "sparsity fraction is positive but rounds to zero coordinates");
  }

  // tr(Omega^2) is the squared Frobenius norm for symmetric Omega.
  const double trace_sq = cov.squaredNorm();
  const double amplitude =
      std::sqrt(spec.target_ratio * std::sqrt(trace_sq) /
                static_cast<double>(s));

  // Partial Fisher-Yates: the first s slots become the support.
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(p));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < s; ++i) {
    const auto j =
        i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(p - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  signal.support.assign(idx.begin(), idx.begin() + s);
  std::sort(signal.support.begin(), signal.support.end());
  for (const Eigen::Index j : signal.support) {
    signal.nu2(j) = amplitude;
  }
  return signal;
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& cov) {
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericError("covariance is not positive definite");
  }
  return llt.matrixL();
}

Eigen::MatrixXd sym_eigen_factor(const Eigen::MatrixXd& cov) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw NumericError("eigendecomposition of the covariance failed");
  }
  // Tiny negative eigenvalues are rounding noise on an SPD input.
  const Eigen::VectorXd roots =
      solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * roots.asDiagonal();
}

Eigen::MatrixXd covariance_factor(Framework fw, const Eigen::MatrixXd& cov) {
  return fw == Framework::gaussian ? cholesky_factor(cov)
                                   : sym_eigen_factor(cov);
}

Eigen::MatrixXd sample_log_basis(Framework fw, const Eigen::VectorXd& nu,
                                 const Eigen::MatrixXd& cov_factor,
                                 Eigen::Index n, RngStream& rng) {
  const Eigen::Index p = nu.size();
  if (cov_factor.rows() != p || cov_factor.cols() != p) {
    throw UsageError("covariance factor does not match the mean dimension");
  }
  if (n < 1) {
    throw UsageError("sample count must be at least 1");
  }

  Eigen::MatrixXd shocks;
  if (fw == Framework::gaussian) {
    shocks = sample_std_normal_matrix(rng, n, p);
  } else {
    shocks = sample_std_gamma_matrix(rng, n, p, kGammaShape);
    shocks.array() -= kGammaShape;
    shocks /= std::sqrt(kGammaShape);
  }
  Eigen::MatrixXd out;
  out.noalias() = shocks * cov_factor.transpose();
  out.rowwise() += nu.transpose();
  return out;
}

Eigen::MatrixXd to_clr_samples(const Eigen::MatrixXd& log_basis) {
  Eigen::MatrixXd out = log_basis;
  out.colwise() -= out.rowwise().mean().eval();
  return out;
}

}  // namespace comptest
