#include "fraudscope/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "fraudscope/error.hpp"

namespace fraudscope {

std::size_t DesignMatrix::count_label(int label) const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

DesignMatrix make_design(std::span<const Observation> observations, std::span<const Ratio> features) {
  DesignMatrix d;
  const auto n = static_cast<Eigen::Index>(observations.size());
  const auto p = static_cast<Eigen::Index>(features.size());
  d.x.resize(n, p);
  d.labels.reserve(observations.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& o = observations[static_cast<std::size_t>(i)];
    for (Eigen::Index j = 0; j < p; ++j) {
      const auto& v = o.ratios[features[static_cast<std::size_t>(j)]];
      d.x(i, j) = v ? *v : std::numeric_limits<double>::quiet_NaN();
    }
    d.labels.push_back(o.fraud ? 1 : 0);
  }
  for (const Ratio r : features) d.feature_names.emplace_back(ratio_name(r));
  return d;
}

DesignMatrix select_rows(const DesignMatrix& data, std::span<const std::size_t> rows) {
  DesignMatrix out;
  out.feature_names = data.feature_names;
  out.x.resize(static_cast<Eigen::Index>(rows.size()), data.x.cols());
  out.labels.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.x.row(static_cast<Eigen::Index>(i)) = data.x.row(static_cast<Eigen::Index>(rows[i]));
    out.labels.push_back(data.labels.at(rows[i]));
  }
  return out;
}

std::vector<double> row_values(const Eigen::MatrixXd& x, std::size_t row) {
  std::vector<double> out(static_cast<std::size_t>(x.cols()));
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    out[static_cast<std::size_t>(j)] = x(static_cast<Eigen::Index>(row), j);
  }
  return out;
}

Preprocessor Preprocessor::fit(const Eigen::MatrixXd& raw, bool standardize) {
  Preprocessor pre;
  pre.standardize = standardize;
  const auto p = static_cast<std::size_t>(raw.cols());
  pre.medians.assign(p, 0.0);
  pre.means.assign(p, 0.0);
  pre.scales.assign(p, 1.0);
  for (std::size_t j = 0; j < p; ++j) {
    const auto col = raw.col(static_cast<Eigen::Index>(j));
    std::vector<double> present;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (!std::isnan(col(i))) present.push_back(col(i));
    }
    if (!present.empty()) {
      std::sort(present.begin(), present.end());
      const std::size_t m = present.size();
      pre.medians[j] = m % 2 == 1 ? present[m / 2] : 0.5 * (present[m / 2 - 1] + present[m / 2]);
    }
    if (!standardize || col.size() == 0) continue;
    double sum = 0.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) sum += std::isnan(col(i)) ? pre.medians[j] : col(i);
    const double mean = sum / static_cast<double>(col.size());
    double ss = 0.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double v = (std::isnan(col(i)) ? pre.medians[j] : col(i)) - mean;
      ss += v * v;
    }
    const double sd = std::sqrt(ss / static_cast<double>(col.size()));
    pre.means[j] = mean;
    pre.scales[j] = sd > 0.0 && std::isfinite(sd) ? sd : 1.0;
  }
  return pre;
}

Eigen::MatrixXd Preprocessor::transform(const Eigen::MatrixXd& raw) const {
  if (static_cast<std::size_t>(raw.cols()) != medians.size()) {
    throw std::invalid_argument("Preprocessor: feature count mismatch");
  }
  Eigen::MatrixXd out = raw;
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      double v = out(i, j);
      if (std::isnan(v)) v = medians[k];
      if (standardize) v = (v - means[k]) / scales[k];
      out(i, j) = v;
    }
  }
  return out;
}

Eigen::VectorXd Preprocessor::transform_row(std::span<const double> raw) const {
  if (raw.size() != medians.size()) throw std::invalid_argument("Preprocessor: feature count mismatch");
  Eigen::VectorXd out(static_cast<Eigen::Index>(raw.size()));
  for (std::size_t k = 0; k < raw.size(); ++k) {
    double v = std::isnan(raw[k]) ? medians[k] : raw[k];
    if (standardize) v = (v - means[k]) / scales[k];
    out(static_cast<Eigen::Index>(k)) = v;
  }
  return out;
}

void require_fittable(std::span<const int> labels) {
  if (labels.size() < 2) throw DataError("need at least two observations to fit");
  const auto fraud = std::count(labels.begin(), labels.end(), 1);
  const auto control = std::count(labels.begin(), labels.end(), 0);
  if (fraud == 0 || control == 0) throw DataError("both classes must be present to fit");
  if (static_cast<std::size_t>(fraud + control) != labels.size()) {
    throw std::invalid_argument("labels must be 0 or 1");
  }
}

}  // namespace fraudscope
