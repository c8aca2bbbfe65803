// dist.hpp
// Distribution functions and quantiles used by the tests: standard normal,
// the Gumbel law calibrating the maximum statistic, chi-squared, and the
// standard Cauchy.

#pragma once

namespace comptest {

// Phi(x), absolute error below 1e-12 for finite x.
double std_normal_cdf(double x);

// z with P(Z > z) = alpha for standard normal Z.
double std_normal_upper_quantile(double alpha);

// F(y) = exp(-exp(-y/2)/sqrt(pi)), the null law of M - 2 log p + log log p.
double gumbel_null_cdf(double y);

// y with 1 - F(y) = alpha for the Gumbel law above.
double gumbel_upper_quantile(double alpha);

// P(chi2_df > x).
double chi2_upper_tail(double x, int df);

// q with P(chi2_df > q) = alpha.
double chi2_upper_quantile(double alpha, int df);

// tan((0.5 - alpha) * pi), the upper alpha-quantile of standard Cauchy.
double cauchy_upper_quantile(double alpha);

}  // namespace comptest
