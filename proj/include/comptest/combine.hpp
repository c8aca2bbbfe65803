// combine.hpp
// Fisher and Cauchy combinations of the maximum- and quadratic-type
// p-values, plus the one-pass battery running all four tests.

#pragma once

#include "comptest/max_test.hpp"
#include "comptest/quad_test.hpp"
#include "comptest/two_sample.hpp"

namespace comptest {

struct CombinationWeights {
  double w_max = 0.5;
  double w_quad = 0.5;
};

// Nonnegative weights summing to one; throws UsageError otherwise.
void validate_weights(const CombinationWeights& w);

// F = -2 (log p_m + log p_q); inputs are clamped before the logs.
double fisher_statistic(double p_m, double p_q);

// C = w_max tan((0.5 - p_m) pi) + w_quad tan((0.5 - p_q) pi).
double cauchy_statistic(double p_m, double p_q,
                        const CombinationWeights& w = {});

// Rejects when F exceeds the chi-squared(4) upper alpha-quantile. The
// p-value uses the df = 4 closed form exp(-F/2)(1 + F/2).
TestResult fisher_test(double p_m, double p_q, double alpha);

// Rejects when C exceeds tan((0.5 - alpha) pi); p-value 0.5 - atan(C)/pi.
TestResult cauchy_test(double p_m, double p_q, const CombinationWeights& w,
                       double alpha);

// All four tests on one dataset, sharing intermediates across methods.
struct TestBattery {
  TestResult max;
  TestResult quad;
  TestResult fisher;
  TestResult cauchy;
  MaxStatistic max_detail;
  QuadIntermediates quad_detail;

  const TestResult& result(Method m) const;
};

TestBattery run_all_tests(const TwoSampleClr& d, double alpha,
                          const CombinationWeights& w = {});

}  // namespace comptest
