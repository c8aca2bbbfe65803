#include "comptest/max_test.hpp"

#include <cmath>
#include <sstream>

#include "comptest/dist.hpp"
#include "comptest/error.hpp"

namespace comptest {

Eigen::VectorXd pooled_variances(const TwoSampleClr& d) {
  const double n1 = static_cast<double>(d.n1());
  const double n2 = static_cast<double>(d.n2());
  if (d.n1() + d.n2() < 3) {
    throw DataError("pooled variance needs at least three samples in total");
  }

  const Eigen::RowVectorXd x_mean = d.x().colwise().mean();
  const Eigen::RowVectorXd y_mean = d.y().colwise().mean();
  const Eigen::VectorXd ssx =
      (d.x().rowwise() - x_mean).colwise().squaredNorm();
  const Eigen::VectorXd ssy =
      (d.y().rowwise() - y_mean).colwise().squaredNorm();
  Eigen::VectorXd gamma = (ssx + ssy) / (n1 + n2);

  for (Eigen::Index j = 0; j < gamma.size(); ++j) {
    if (!(gamma(j) > 0.0)) {
      std::ostringstream msg;
      msg << "column " << j
          << " has zero pooled variance; drop it or pass --drop-degenerate";
      throw DegenerateColumnError(j, msg.str());
    }
  }
  return gamma;
}

MaxStatistic max_statistic(const TwoSampleClr& d) {
  const Eigen::VectorXd gamma = pooled_variances(d);
  const double n1 = static_cast<double>(d.n1());
  const double n2 = static_cast<double>(d.n2());

  const Eigen::VectorXd diff =
      (d.x().colwise().mean() - d.y().colwise().mean()).transpose();
  const Eigen::VectorXd standardized = diff.array().square() / gamma.array();

  Eigen::Index argmax = 0;
  const double peak = standardized.maxCoeff(&argmax);
  return MaxStatistic{n1 * n2 / (n1 + n2) * peak, argmax};
}

double max_p_value(double m_stat, Eigen::Index p) {
  if (p < 3) {
    throw UsageError("the Gumbel calibration requires p >= 3");
  }
  const double log_p = std::log(static_cast<double>(p));
  const double y = m_stat - 2.0 * log_p + std::log(log_p);
  return clamp_p_value(1.0 - gumbel_null_cdf(y));
}

TestResult max_test(const TwoSampleClr& d, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw UsageError("alpha must lie strictly between 0 and 1");
  }
  const MaxStatistic m = max_statistic(d);
  const double p_value = max_p_value(m.value, d.p());
  return TestResult{Method::max, m.value, p_value, p_value <= alpha, alpha};
}

}  // namespace comptest
