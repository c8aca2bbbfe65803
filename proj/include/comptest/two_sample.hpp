// two_sample.hpp
// Two groups of CLR-transformed samples and the result record every test
// produces.

#pragma once

#include <string_view>

#include <Eigen/Core>

#include "comptest/compositional.hpp"

namespace comptest {

enum class Method { max, quad, fisher, cauchy };

std::string_view method_name(Method m) noexcept;

struct TestResult {
  Method method;
  double statistic;
  double p_value;
  bool reject;
  double alpha;
};

// p-values are clamped away from {0, 1} before any log or tan downstream.
inline constexpr double kPValueFloor = 1e-15;

double clamp_p_value(double p) noexcept;

class TwoSampleClr {
 public:
  // Validated CLR input (rows sum to zero).
  static TwoSampleClr from_clr(const ClrMatrix& x, const ClrMatrix& y);

  // Dimension checks only; used where the data are centered by construction.
  static TwoSampleClr from_data(Eigen::MatrixXd x, Eigen::MatrixXd y);

  const Eigen::MatrixXd& x() const noexcept { return x_; }
  const Eigen::MatrixXd& y() const noexcept { return y_; }
  Eigen::Index n1() const noexcept { return x_.rows(); }
  Eigen::Index n2() const noexcept { return y_.rows(); }
  Eigen::Index p() const noexcept { return x_.cols(); }

 private:
  TwoSampleClr(Eigen::MatrixXd x, Eigen::MatrixXd y)
      : x_(std::move(x)), y_(std::move(y)) {}

  Eigen::MatrixXd x_;
  Eigen::MatrixXd y_;
};

}  // namespace comptest
