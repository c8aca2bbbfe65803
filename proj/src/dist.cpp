#include "comptest/dist.hpp"

#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "comptest/error.hpp"

namespace comptest {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kInvSqrtPi = 1.0 / std::sqrt(kPi);

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw UsageError("alpha must lie strictly between 0 and 1");
  }
}

}  // namespace

double std_normal_cdf(double x) {
  if (std::isnan(x)) {
    throw UsageError("std_normal_cdf requires a finite argument");
  }
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double std_normal_upper_quantile(double alpha) {
  check_alpha(alpha);
  boost::math::normal_distribution<double> dist;
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double gumbel_null_cdf(double y) {
  if (std::isnan(y)) {
    throw UsageError("gumbel_null_cdf requires a finite argument");
  }
  return std::exp(-kInvSqrtPi * std::exp(-y / 2.0));
}

double gumbel_upper_quantile(double alpha) {
  check_alpha(alpha);
  // 1 - F(y) = alpha  =>  y = -2 log(sqrt(pi) * (-log(1 - alpha)))
  return -2.0 * std::log(-std::log1p(-alpha) / kInvSqrtPi);
}

double chi2_upper_tail(double x, int df) {
  if (df < 1) {
    throw UsageError("chi-squared degrees of freedom must be positive");
  }
  if (x <= 0.0) {
    return 1.0;
  }
  boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::cdf(boost::math::complement(dist, x));
}

double chi2_upper_quantile(double alpha, int df) {
  check_alpha(alpha);
  if (df < 1) {
    throw UsageError("chi-squared degrees of freedom must be positive");
  }
  boost::math::chi_squared_distribution<double> dist(df);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

double cauchy_upper_quantile(double alpha) {
  check_alpha(alpha);
  return std::tan((0.5 - alpha) * kPi);
}

}  // namespace comptest
