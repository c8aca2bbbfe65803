#include "comptest/two_sample.hpp"

#include <algorithm>

#include "comptest/error.hpp"

namespace comptest {

std::string_view method_name(Method m) noexcept {
  switch (m) {
    case Method::max:
      return "max";
    case Method::quad:
      return "quad";
    case Method::fisher:
      return "fisher";
    case Method::cauchy:
      return "cauchy";
  }
  return "unknown";
}

double clamp_p_value(double p) noexcept {
  return std::clamp(p, kPValueFloor, 1.0 - kPValueFloor);
}

namespace {

void check_dims(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y) {
  if (x.cols() != y.cols()) {
    throw DataError("the two groups must share the same columns");
  }
  if (x.rows() < 2 || y.rows() < 2) {
    throw DataError("each group needs at least two samples");
  }
}

}  // namespace

TwoSampleClr TwoSampleClr::from_clr(const ClrMatrix& x, const ClrMatrix& y) {
  check_dims(x.values(), y.values());
  return TwoSampleClr(x.values(), y.values());
}

TwoSampleClr TwoSampleClr::from_data(Eigen::MatrixXd x, Eigen::MatrixXd y) {
  check_dims(x, y);
  return TwoSampleClr(std::move(x), std::move(y));
}

}  // namespace comptest
