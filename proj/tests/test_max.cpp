#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "comptest/dist.hpp"
#include "comptest/max_test.hpp"
#include "comptest/rng.hpp"
#include "comptest/simgen.hpp"

#include "testing/oracles.hpp"

using namespace comptest;

namespace {

TwoSampleClr centered_pair(RngStream& rng, Eigen::Index n1, Eigen::Index n2,
                           Eigen::Index p) {
  return TwoSampleClr::from_data(
      to_clr_samples(sample_std_normal_matrix(rng, n1, p)),
      to_clr_samples(sample_std_normal_matrix(rng, n2, p)));
}

}  // namespace

TEST_CASE("pooled variances on a hand instance") {
  Eigen::MatrixXd x(2, 2), y(2, 2);
  x << 1, -1, 3, -3;
  y << 0, 0, 2, -2;
  const TwoSampleClr d = TwoSampleClr::from_data(x, y);
  const Eigen::VectorXd gamma = pooled_variances(d);
  CHECK(gamma(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma(1) == doctest::Approx(1.0).epsilon(1e-14));

  const MaxStatistic m = max_statistic(d);
  CHECK(m.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.argmax_column == 0);  // tie broken to the first column
}

TEST_CASE("constant columns raise a degenerate-column error") {
  Eigen::MatrixXd x(2, 3), y(2, 3);
  x << 0, 1, -1, 0, 2, -2;
  y << 0, -1, 1, 0, 3, -3;
  const TwoSampleClr d = TwoSampleClr::from_data(x, y);
  CHECK_THROWS_AS(pooled_variances(d), DegenerateColumnError);
  try {
    pooled_variances(d);
  } catch (const DegenerateColumnError& e) {
    CHECK(e.column() == 0);
  }
}

TEST_CASE("doubling the data multiplies pooled variances by four") {
  RngStream rng(21, 0);
  const TwoSampleClr d = centered_pair(rng, 5, 6, 4);
  const Eigen::VectorXd gamma = pooled_variances(d);
  const TwoSampleClr doubled =
      TwoSampleClr::from_data(2.0 * d.x(), 2.0 * d.y());
  const Eigen::VectorXd gamma2 = pooled_variances(doubled);
  CHECK((gamma2 - 4.0 * gamma).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("identical group means give a zero statistic") {
  Eigen::MatrixXd x(2, 3), y(2, 3);
  x << 1, 0, -1, -1, 0, 1;
  y << 2, -1, -1, -2, 1, 1;
  // column means are zero in both groups
  const TwoSampleClr d = TwoSampleClr::from_data(x, y);
  CHECK(max_statistic(d).value == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("max statistic matches the naive oracle") {
  RngStream rng(22, 0);
  for (int rep = 0; rep < 50; ++rep) {
    const auto n1 = static_cast<Eigen::Index>(3 + rng.below(8));
    const auto n2 = static_cast<Eigen::Index>(3 + rng.below(8));
    // p >= 3: at p = 2 row centering forces an exact two-column tie and the
    // argmax comparison would hinge on last-ulp rounding
    const auto p = static_cast<Eigen::Index>(3 + rng.below(6));
    const TwoSampleClr d = centered_pair(rng, n1, n2, p);
    const MaxStatistic mine = max_statistic(d);
    const auto [oracle, oracle_j] = testing_oracles::naive_max_statistic(
        d.x(), d.y());
    CHECK(mine.value ==
          doctest::Approx(oracle).epsilon(1e-9));
    CHECK(mine.argmax_column == oracle_j);
  }
}

TEST_CASE("max statistic is invariant to shared column permutations") {
  RngStream rng(23, 0);
  const TwoSampleClr d = centered_pair(rng, 6, 7, 5);
  const MaxStatistic base = max_statistic(d);

  // rotate columns by two
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
  for (Eigen::Index j = 0; j < 5; ++j) {
    perm.indices()(j) = static_cast<int>((j + 2) % 5);
  }
  const TwoSampleClr permuted =
      TwoSampleClr::from_data(d.x() * perm, d.y() * perm);
  const MaxStatistic moved = max_statistic(permuted);
  CHECK(moved.value == doctest::Approx(base.value).epsilon(1e-12));
  // right-multiplication pulls columns: new column c is old column indices(c)
  CHECK(perm.indices()(moved.argmax_column) == base.argmax_column);
}

TEST_CASE("max statistic invariances: location shift and scaling") {
  RngStream rng(24, 0);
  const TwoSampleClr d = centered_pair(rng, 8, 5, 6);
  const MaxStatistic base = max_statistic(d);

  // common zero-sum shift keeps rows centered and the statistic unchanged
  Eigen::RowVectorXd shift(6);
  shift << 1.0, -2.0, 0.5, 0.5, -1.0, 1.0;
  const TwoSampleClr shifted = TwoSampleClr::from_data(
      d.x().rowwise() + shift, d.y().rowwise() + shift);
  CHECK(max_statistic(shifted).value ==
        doctest::Approx(base.value).epsilon(1e-10));

  const TwoSampleClr scaled =
      TwoSampleClr::from_data(3.7 * d.x(), 3.7 * d.y());
  CHECK(max_statistic(scaled).value ==
        doctest::Approx(base.value).epsilon(1e-12));
}

TEST_CASE("max p-value closed form and limits") {
  const Eigen::Index p = 50;
  const double log_p = std::log(double(p));
  // at the centering point the Gumbel argument is zero
  const double at_center = max_p_value(2.0 * log_p - std::log(log_p), p);
  CHECK(at_center == doctest::Approx(0.4311790581359798).epsilon(1e-12));

  CHECK(max_p_value(1e5, p) == doctest::Approx(1e-15).epsilon(1e-3));
  CHECK_THROWS_AS(max_p_value(1.0, 2), UsageError);
}

TEST_CASE("max p-value is strictly decreasing in the statistic") {
  double prev = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.2 * i;
    const double pv = max_p_value(m, 100);
    CHECK(pv < prev);
    prev = pv;
  }
}

TEST_CASE("statistic path and p-value path agree on the decision") {
  RngStream rng(25, 0);
  for (int rep = 0; rep < 30; ++rep) {
    const TwoSampleClr d = centered_pair(rng, 10, 12, 20);
    const MaxStatistic m = max_statistic(d);
    for (const double alpha : {0.01, 0.05, 0.1}) {
      const TestResult r = max_test(d, alpha);
      const double log_p = std::log(double(d.p()));
      const double critical =
          gumbel_upper_quantile(alpha) + 2.0 * log_p - std::log(log_p);
      CHECK(r.reject == (m.value >= critical));
      CHECK(r.reject == (r.p_value <= alpha));
    }
  }
}

TEST_CASE("identical groups fail to reject") {
  RngStream rng(26, 0);
  const Eigen::MatrixXd x = to_clr_samples(sample_std_normal_matrix(rng, 8, 10));
  const TwoSampleClr d = TwoSampleClr::from_data(x, x);
  const TestResult r = max_test(d, 0.05);
  CHECK(r.statistic == doctest::Approx(0.0).epsilon(1e-20));
  CHECK_FALSE(r.reject);
}
