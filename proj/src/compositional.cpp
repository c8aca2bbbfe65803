#include "comptest/compositional.hpp"

#include <cmath>
#include <sstream>

namespace comptest {

void validate_counts(const CountMatrix& m) {
  const Eigen::Index n = m.values.rows();
  const Eigen::Index p = m.values.cols();
  if (n < 1) {
    throw DataError("count matrix needs at least one sample row");
  }
  if (p < 2) {
    throw DataError("count matrix needs at least two columns");
  }
  if (!m.row_ids.empty() && static_cast<Eigen::Index>(m.row_ids.size()) != n) {
    throw DataError("row id count does not match the number of rows");
  }
  if (!m.col_ids.empty() && static_cast<Eigen::Index>(m.col_ids.size()) != p) {
    throw DataError("column id count does not match the number of columns");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    bool any_positive = false;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double v = m.values(i, j);
      if (!std::isfinite(v)) {
        std::ostringstream msg;
        msg << "non-finite entry at row " << i << ", column " << j;
        throw DataError(msg.str());
      }
      if (v < 0.0) {
        std::ostringstream msg;
        msg << "negative entry at row " << i << ", column " << j;
        throw DataError(msg.str());
      }
      any_positive = any_positive || v > 0.0;
    }
    if (!any_positive) {
      std::ostringstream msg;
      msg << "row " << i << " is all zero";
      throw DataError(msg.str());
    }
  }
}

CountMatrix impute_pseudo_count(const CountMatrix& m, double pseudo_count) {
  if (!(pseudo_count > 0.0)) {
    throw UsageError("pseudo count must be positive");
  }
  validate_counts(m);
  CountMatrix out = m;
  out.values = (m.values.array() == 0.0).select(pseudo_count, m.values);
  return out;
}

FilterResult filter_min_count(const CountMatrix& m, double min_total) {
  if (min_total < 0.0) {
    throw UsageError("minimum count threshold must be nonnegative");
  }
  validate_counts(m);
  const Eigen::Index p = m.values.cols();
  const Eigen::VectorXd totals = m.values.colwise().sum();

  std::vector<Eigen::Index> keep;
  FilterResult result;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (totals(j) >= min_total) {
      keep.push_back(j);
    } else {
      result.dropped_indices.push_back(j);
      if (!m.col_ids.empty()) {
        result.dropped_ids.push_back(m.col_ids[j]);
      }
    }
  }
  if (keep.empty()) {
    throw DataError("minimum-count filter would drop every column");
  }

  result.kept.values.resize(m.values.rows(),
                            static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    result.kept.values.col(static_cast<Eigen::Index>(k)) =
        m.values.col(keep[k]);
    if (!m.col_ids.empty()) {
      result.kept.col_ids.push_back(m.col_ids[keep[k]]);
    }
  }
  result.kept.row_ids = m.row_ids;
  if (result.kept.values.cols() < 2) {
    throw DataError("minimum-count filter left fewer than two columns");
  }
  return result;
}

CompositionMatrix CompositionMatrix::from_rows(Eigen::MatrixXd values) {
  const Eigen::Index n = values.rows();
  const Eigen::Index p = values.cols();
  if (n < 1 || p < 2) {
    throw DataError("composition needs at least one row and two columns");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double v = values(i, j);
      if (!std::isfinite(v) || v <= 0.0) {
        std::ostringstream msg;
        msg << "composition entry at row " << i << ", column " << j
            << " is not strictly positive";
        throw DataError(msg.str());
      }
      sum += v;
    }
    const double mismatch = std::abs(sum - 1.0);
    if (mismatch > kRenormalizeTolerance) {
      std::ostringstream msg;
      msg << "row " << i << " sums to " << sum
          << ", too far from 1 to renormalize";
      throw DataError(msg.str());
    }
    if (mismatch > kRowSumTolerance) {
      values.row(i) /= sum;
    }
  }
  return CompositionMatrix(std::move(values));
}

ClrMatrix ClrMatrix::from_values(Eigen::MatrixXd values) {
  const Eigen::Index n = values.rows();
  const Eigen::Index p = values.cols();
  if (n < 1 || p < 2) {
    throw DataError("CLR matrix needs at least one row and two columns");
  }
  const double tol = kRowSumTolerancePerColumn * static_cast<double>(p);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!values.row(i).allFinite()) {
      std::ostringstream msg;
      msg << "CLR row " << i << " has a non-finite entry";
      throw DataError(msg.str());
    }
    const double sum = values.row(i).sum();
    if (std::abs(sum) > tol) {
      std::ostringstream msg;
      msg << "CLR row " << i << " sums to " << sum << " (tolerance " << tol
          << ")";
      throw DataError(msg.str());
    }
  }
  return ClrMatrix(std::move(values));
}

CompositionMatrix to_relative_abundance(const CountMatrix& m) {
  validate_counts(m);
  if ((m.values.array() <= 0.0).any()) {
    throw DataError(
        "relative abundance requires strictly positive entries; impute zeros "
        "first");
  }
  Eigen::MatrixXd values = m.values;
  values.array().colwise() /= values.rowwise().sum().array();
  return CompositionMatrix::from_rows(std::move(values));
}

ClrMatrix clr_transform(const CompositionMatrix& m) {
  Eigen::MatrixXd logs = m.values().array().log();
  const Eigen::VectorXd row_means = logs.rowwise().mean();
  logs.colwise() -= row_means;
  return ClrMatrix::from_values(std::move(logs));
}

Eigen::MatrixXd alr_transform(const CompositionMatrix& m,
                              Eigen::Index ref_col) {
  const Eigen::Index p = m.cols();
  if (ref_col < 0 || ref_col >= p) {
    throw UsageError("ALR reference column index out of range");
  }
  const Eigen::MatrixXd logs = m.values().array().log();
  Eigen::MatrixXd out(m.rows(), p - 1);
  Eigen::Index k = 0;
  for (Eigen::Index j = 0; j < p; ++j) {
    if (j == ref_col) {
      continue;
    }
    out.col(k++) = logs.col(j) - logs.col(ref_col);
  }
  return out;
}

Eigen::MatrixXd centering_projection(Eigen::Index p) {
  if (p < 2) {
    throw UsageError("centering projection requires p >= 2");
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Constant(p, p, -1.0 / static_cast<double>(p));
  g.diagonal().array() += 1.0;
  return g;
}

}  // namespace comptest
