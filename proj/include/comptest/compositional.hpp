// compositional.hpp
// Raw count tables, compositions on the simplex, and the log-ratio
// transforms that take them to unconstrained coordinates.

#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "comptest/error.hpp"

namespace comptest {

// Raw counts or abundances: rows are samples, columns are taxa.
struct CountMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> row_ids;  // optional, empty when absent
  std::vector<std::string> col_ids;  // optional, empty when absent
};

// Checks finite nonnegative entries, n >= 1, p >= 2, no all-zero row,
// and id lengths consistent with the matrix. Throws DataError.
void validate_counts(const CountMatrix& m);

// Replaces zero entries by pseudo_count, leaving positive entries unchanged.
CountMatrix impute_pseudo_count(const CountMatrix& m, double pseudo_count);

struct FilterResult {
  CountMatrix kept;
  std::vector<std::string> dropped_ids;
  std::vector<Eigen::Index> dropped_indices;
};

// Drops columns whose total count across all samples is below min_total.
FilterResult filter_min_count(const CountMatrix& m, double min_total);

// Strictly positive rows summing to one. Rows within 1e-6 of unit sum are
// renormalized on construction; larger mismatches are rejected.
class CompositionMatrix {
 public:
  static CompositionMatrix from_rows(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }

  static constexpr double kRowSumTolerance = 1e-10;
  static constexpr double kRenormalizeTolerance = 1e-6;

 private:
  explicit CompositionMatrix(Eigen::MatrixXd values)
      : values_(std::move(values)) {}

  Eigen::MatrixXd values_;
};

// Centered log-ratio coordinates; every row sums to zero.
class ClrMatrix {
 public:
  static ClrMatrix from_values(Eigen::MatrixXd values);

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }

  static constexpr double kRowSumTolerancePerColumn = 1e-8;

 private:
  explicit ClrMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {}

  Eigen::MatrixXd values_;
};

// Divides each row by its own sum. Requires strictly positive entries.
CompositionMatrix to_relative_abundance(const CountMatrix& m);

// clr(x)_j = log x_j - mean_k log x_k, row by row.
ClrMatrix clr_transform(const CompositionMatrix& m);

// Log-ratios against the reference column, which is removed; the remaining
// column order is preserved. ref_col is zero-based.
Eigen::MatrixXd alr_transform(const CompositionMatrix& m, Eigen::Index ref_col);

// G = I - (1/p) 11^T, the projection onto the zero-sum subspace.
Eigen::MatrixXd centering_projection(Eigen::Index p);

}  // namespace comptest
