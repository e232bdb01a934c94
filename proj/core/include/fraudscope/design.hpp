#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fraudscope/ratios.hpp"

namespace fraudscope {

/// Rows are observations, columns the selected ratios. Before preprocessing a
/// NaN cell marks a missing ratio.
struct DesignMatrix {
  Eigen::MatrixXd x;
  std::vector<int> labels;  // 1 = fraud
  std::vector<std::string> feature_names;

  std::size_t rows() const { return static_cast<std::size_t>(x.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(x.cols()); }
  std::size_t count_label(int label) const;
};

DesignMatrix make_design(std::span<const Observation> observations, std::span<const Ratio> features);

DesignMatrix select_rows(const DesignMatrix& data, std::span<const std::size_t> rows);

std::vector<double> row_values(const Eigen::MatrixXd& x, std::size_t row);

/// Training-split statistics applied to every later input: per-feature median
/// imputation, then optional standardisation.
struct Preprocessor {
  std::vector<double> medians;
  std::vector<double> means;
  std::vector<double> scales;
  bool standardize = false;

  /// Feature columns that are entirely missing impute to 0; zero-variance
  /// columns get scale 1.
  static Preprocessor fit(const Eigen::MatrixXd& raw, bool standardize);

  Eigen::MatrixXd transform(const Eigen::MatrixXd& raw) const;
  Eigen::VectorXd transform_row(std::span<const double> raw) const;
};

/// Throws DataError unless both labels are present and n >= 2.
void require_fittable(std::span<const int> labels);

}  // namespace fraudscope
