// max_test.hpp
// Maximum-type statistic: the largest standardized squared mean difference
// across columns, calibrated against a Gumbel null.

#pragma once

#include <Eigen/Core>

#include "comptest/two_sample.hpp"

namespace comptest {

// Pooled per-column variance (n1 + n2 in the denominator). Throws
// DegenerateColumnError when a column has zero pooled variance.
Eigen::VectorXd pooled_variances(const TwoSampleClr& d);

struct MaxStatistic {
  double value;
  Eigen::Index argmax_column;  // which column attains the maximum
};

// M = n1 n2 / (n1 + n2) * max_j (xbar_j - ybar_j)^2 / gamma_j.
MaxStatistic max_statistic(const TwoSampleClr& d);

// p_M = 1 - F(M - 2 log p + log log p), clamped. Requires p >= 3.
double max_p_value(double m_stat, Eigen::Index p);

TestResult max_test(const TwoSampleClr& d, double alpha);

}  // namespace comptest
