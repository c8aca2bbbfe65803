// quad_test.hpp
// Quadratic-type statistic: an unbiased U-statistic estimate of the squared
// mean difference, studentized by leave-out trace estimators and calibrated
// against a standard normal null.

#pragma once

#include "comptest/two_sample.hpp"

namespace comptest {

struct TraceEstimates {
  double s1_sq;  // estimate of tr(Sigma1^2)
  double s2_sq;  // estimate of tr(Sigma2^2)
  double s1_s2;  // estimate of tr(Sigma1 Sigma2)
};

struct QuadIntermediates {
  double t_stat;
  TraceEstimates traces;
  double sigma_hat_sq;
};

// T = sum_{i != j} x_i'x_j / (n1(n1-1)) + sum_{i != j} y_i'y_j / (n2(n2-1))
//     - 2 sum_i sum_j x_i'y_j / (n1 n2), computed through Gram matrices.
double t_statistic(const TwoSampleClr& d);

// Leave-two-out (within group) and leave-one-out (across groups) trace
// estimates; requires n1 >= 4 and n2 >= 4.
TraceEstimates trace_estimators(const TwoSampleClr& d);

struct QuadStatistic {
  double value;  // Q = T / sqrt(sigma_hat_sq)
  QuadIntermediates intermediates;
};

// Throws NumericError when sigma_hat_sq <= 0.
QuadStatistic quad_statistic(const TwoSampleClr& d);

TestResult quad_test(const TwoSampleClr& d, double alpha);

}  // namespace comptest
