#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "comptest/compositional.hpp"
#include "comptest/rng.hpp"

using namespace comptest;

namespace {

CountMatrix counts(std::initializer_list<std::initializer_list<double>> rows) {
  CountMatrix m;
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto p = static_cast<Eigen::Index>(rows.begin()->size());
  m.values.resize(n, p);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const double v : row) {
      m.values(i, j++) = v;
    }
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("pseudo count replaces zeros only") {
  const CountMatrix m = counts({{0, 3}, {2, 0}});
  const CountMatrix imputed = impute_pseudo_count(m, 0.5);
  Eigen::MatrixXd expected(2, 2);
  expected << 0.5, 3, 2, 0.5;
  CHECK(imputed.values == expected);
}

TEST_CASE("pseudo count is a no-op without zeros") {
  const CountMatrix m = counts({{1, 3}, {2, 5}});
  CHECK(impute_pseudo_count(m, 0.7).values == m.values);
}

TEST_CASE("count validation rejects bad rows") {
  CHECK_THROWS_AS(impute_pseudo_count(counts({{0, 0, 0}, {1, 2, 3}}), 0.5),
                  DataError);
  CHECK_THROWS_AS(impute_pseudo_count(counts({{1, -2}, {1, 2}}), 0.5),
                  DataError);
  CountMatrix nan_m = counts({{1, 2}, {3, 4}});
  nan_m.values(0, 1) = std::nan("");
  CHECK_THROWS_AS(impute_pseudo_count(nan_m, 0.5), DataError);
  CHECK_THROWS_AS(impute_pseudo_count(counts({{1, 2}, {3, 4}}), 0.0),
                  UsageError);
}

TEST_CASE("relative abundance divides by row sums") {
  const CompositionMatrix c = to_relative_abundance(counts({{1, 1, 2}}));
  Eigen::MatrixXd expected(1, 3);
  expected << 0.25, 0.25, 0.5;
  CHECK((c.values() - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("relative abundance hand oracle") {
  const CompositionMatrix c =
      to_relative_abundance(counts({{0.5, 3}, {2, 0.5}}));
  CHECK(c.values()(0, 0) == doctest::Approx(1.0 / 7.0).epsilon(1e-14));
  CHECK(c.values()(0, 1) == doctest::Approx(6.0 / 7.0).epsilon(1e-14));
  CHECK(c.values()(1, 0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(c.values()(1, 1) == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("relative abundance is idempotent and rejects zeros") {
  const CompositionMatrix once = to_relative_abundance(counts({{2, 6, 2}}));
  CountMatrix as_counts;
  as_counts.values = once.values();
  const CompositionMatrix twice = to_relative_abundance(as_counts);
  CHECK((once.values() - twice.values()).cwiseAbs().maxCoeff() <= 1e-15);

  CHECK_THROWS_AS(to_relative_abundance(counts({{0, 1, 2}})), DataError);
}

TEST_CASE("composition rows close to one are renormalized, far ones rejected") {
  Eigen::MatrixXd near(1, 2);
  near << 0.5 + 4e-7, 0.5;
  const CompositionMatrix fixed = CompositionMatrix::from_rows(near);
  CHECK(std::abs(fixed.values().row(0).sum() - 1.0) <= 1e-12);

  Eigen::MatrixXd far(1, 2);
  far << 0.5 + 1e-3, 0.5;
  CHECK_THROWS_AS(CompositionMatrix::from_rows(far), DataError);
}

TEST_CASE("clr of the uniform row is zero") {
  const Eigen::Index p = 6;
  const CompositionMatrix uniform = CompositionMatrix::from_rows(
      Eigen::MatrixXd::Constant(1, p, 1.0 / double(p)));
  CHECK(clr_transform(uniform).values().cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("clr hand computation in log space") {
  const double e = std::exp(1.0);
  Eigen::MatrixXd row(1, 2);
  row << e / (e + e * e * e), e * e * e / (e + e * e * e);
  const ClrMatrix clr = clr_transform(CompositionMatrix::from_rows(row));
  CHECK(clr.values()(0, 0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(clr.values()(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("clr rows sum to zero and the transform is scale invariant") {
  RngStream rng(7, 1);
  const Eigen::Index n = 20, p = 40;
  Eigen::MatrixXd raw =
      sample_std_normal_matrix(rng, n, p).array().exp().matrix();

  CountMatrix base;
  base.values = raw;
  const ClrMatrix clr1 = clr_transform(to_relative_abundance(base));
  for (Eigen::Index i = 0; i < n; ++i) {
    CHECK(std::abs(clr1.values().row(i).sum()) <= 1e-8 * double(p));
  }

  // per-row positive rescaling before normalization changes nothing
  CountMatrix scaled = base;
  for (Eigen::Index i = 0; i < n; ++i) {
    scaled.values.row(i) *= 0.5 + 3.0 * rng.uniform01();
  }
  const ClrMatrix clr2 = clr_transform(to_relative_abundance(scaled));
  CHECK((clr1.values() - clr2.values()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("clr equals the centering projection applied to logs") {
  RngStream rng(8, 2);
  const Eigen::Index n = 10, p = 7;
  Eigen::MatrixXd raw =
      sample_std_normal_matrix(rng, n, p).array().exp().matrix();
  CountMatrix base;
  base.values = raw;
  const CompositionMatrix comp = to_relative_abundance(base);
  const ClrMatrix clr = clr_transform(comp);

  const Eigen::MatrixXd g = centering_projection(p);
  const Eigen::MatrixXd logs = comp.values().array().log();
  const Eigen::MatrixXd projected = logs * g.transpose();
  CHECK((clr.values() - projected).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("alr hand cases") {
  const CompositionMatrix c = to_relative_abundance(counts({{1, 1, 2}}));
  const Eigen::MatrixXd alr = alr_transform(c, 2);
  CHECK(alr.rows() == 1);
  CHECK(alr.cols() == 2);
  CHECK(alr(0, 0) == doctest::Approx(std::log(0.5)).epsilon(1e-14));
  CHECK(alr(0, 1) == doctest::Approx(std::log(0.5)).epsilon(1e-14));

  const Eigen::Index p = 5;
  const CompositionMatrix uniform = CompositionMatrix::from_rows(
      Eigen::MatrixXd::Constant(1, p, 1.0 / double(p)));
  CHECK(alr_transform(uniform, 3).cwiseAbs().maxCoeff() <= 1e-14);

  const CompositionMatrix binary = to_relative_abundance(counts({{3, 1}}));
  const Eigen::MatrixXd single = alr_transform(binary, 1);
  CHECK(single.cols() == 1);
  CHECK(single(0, 0) == doctest::Approx(std::log(3.0)).epsilon(1e-12));

  CHECK_THROWS_AS(alr_transform(binary, 2), UsageError);
  CHECK_THROWS_AS(alr_transform(binary, -1), UsageError);
}

TEST_CASE("composition is recoverable from alr coordinates") {
  RngStream rng(9, 3);
  const Eigen::Index p = 6;
  Eigen::MatrixXd raw =
      sample_std_normal_matrix(rng, 4, p).array().exp().matrix();
  CountMatrix base;
  base.values = raw;
  const CompositionMatrix comp = to_relative_abundance(base);
  const Eigen::Index ref = p - 1;
  const Eigen::MatrixXd alr = alr_transform(comp, ref);

  for (Eigen::Index i = 0; i < comp.rows(); ++i) {
    double denom = 1.0;
    for (Eigen::Index j = 0; j < p - 1; ++j) {
      denom += std::exp(alr(i, j));
    }
    for (Eigen::Index j = 0; j < p - 1; ++j) {
      CHECK(std::abs(std::exp(alr(i, j)) / denom - comp.values()(i, j)) <=
            1e-12);
    }
    CHECK(std::abs(1.0 / denom - comp.values()(i, ref)) <= 1e-12);
  }
}

TEST_CASE("centering projection closed form and algebra") {
  const Eigen::MatrixXd g2 = centering_projection(2);
  Eigen::MatrixXd expected(2, 2);
  expected << 0.5, -0.5, -0.5, 0.5;
  CHECK((g2 - expected).cwiseAbs().maxCoeff() <= 1e-15);

  const Eigen::MatrixXd g5 = centering_projection(5);
  CHECK((g5 * Eigen::VectorXd::Ones(5)).cwiseAbs().maxCoeff() <= 1e-15);

  const Eigen::MatrixXd g7 = centering_projection(7);
  CHECK(((g7 * g7) - g7).cwiseAbs().maxCoeff() <= 1e-14);
  CHECK((g7 - g7.transpose()).cwiseAbs().maxCoeff() == 0.0);

  CHECK_THROWS_AS(centering_projection(1), UsageError);
}

TEST_CASE("minimum count filter") {
  CountMatrix m = counts({{5, 0, 3}, {6, 1, 2}});
  m.col_ids = {"a", "b", "c"};

  const FilterResult keep_all = filter_min_count(m, 0);
  CHECK(keep_all.kept.values == m.values);
  CHECK(keep_all.dropped_ids.empty());

  const FilterResult filtered = filter_min_count(m, 5);
  CHECK(filtered.kept.values.cols() == 2);
  CHECK(filtered.dropped_ids == std::vector<std::string>{"b"});
  CHECK(filtered.kept.col_ids == std::vector<std::string>{"a", "c"});

  CHECK_THROWS_AS(filter_min_count(m, 100), DataError);
}
