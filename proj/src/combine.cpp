#include "comptest/combine.hpp"

#include <cmath>

#include "comptest/dist.hpp"
#include "comptest/error.hpp"

namespace comptest {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw UsageError("alpha must lie strictly between 0 and 1");
  }
}

void check_p_value(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw UsageError("p-values must lie in [0, 1]");
  }
}

}  // namespace

void validate_weights(const CombinationWeights& w) {
  if (!(w.w_max >= 0.0) || !(w.w_quad >= 0.0)) {
    throw UsageError("combination weights must be nonnegative");
  }
  if (std::abs(w.w_max + w.w_quad - 1.0) > 1e-12) {
    throw UsageError("combination weights must sum to 1");
  }
}

double fisher_statistic(double p_m, double p_q) {
  check_p_value(p_m);
  check_p_value(p_q);
  return -2.0 * (std::log(clamp_p_value(p_m)) + std::log(clamp_p_value(p_q)));
}

double cauchy_statistic(double p_m, double p_q, const CombinationWeights& w) {
  validate_weights(w);
  check_p_value(p_m);
  check_p_value(p_q);
  return w.w_max * std::tan((0.5 - clamp_p_value(p_m)) * kPi) +
         w.w_quad * std::tan((0.5 - clamp_p_value(p_q)) * kPi);
}

TestResult fisher_test(double p_m, double p_q, double alpha) {
  check_alpha(alpha);
  const double f = fisher_statistic(p_m, p_q);
  // chi-squared with 4 df has the closed-form upper tail exp(-x/2)(1 + x/2)
  const double p_value = clamp_p_value(std::exp(-f / 2.0) * (1.0 + f / 2.0));
  return TestResult{Method::fisher, f, p_value, p_value <= alpha, alpha};
}

TestResult cauchy_test(double p_m, double p_q, const CombinationWeights& w,
                       double alpha) {
  check_alpha(alpha);
  const double c = cauchy_statistic(p_m, p_q, w);
  const double p_value = clamp_p_value(0.5 - std::atan(c) / kPi);
  return TestResult{Method::cauchy, c, p_value, p_value <= alpha, alpha};
}

const TestResult& TestBattery::result(Method m) const {
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
  return max;  // unreachable
}

TestBattery run_all_tests(const TwoSampleClr& d, double alpha,
                          const CombinationWeights& w) {
  check_alpha(alpha);
  validate_weights(w);

  TestBattery battery;
  battery.max_detail = max_statistic(d);
  const double p_m = max_p_value(battery.max_detail.value, d.p());
  battery.max = TestResult{Method::max, battery.max_detail.value, p_m,
                           p_m <= alpha, alpha};

  const QuadStatistic q = quad_statistic(d);
  battery.quad_detail = q.intermediates;
  const double p_q = clamp_p_value(1.0 - std_normal_cdf(q.value));
  battery.quad =
      TestResult{Method::quad, q.value, p_q, p_q <= alpha, alpha};

  battery.fisher = fisher_test(p_m, p_q, alpha);
  battery.cauchy = cauchy_test(p_m, p_q, w, alpha);
  return battery;
}

}  // namespace comptest
