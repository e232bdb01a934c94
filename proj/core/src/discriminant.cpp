#include "fraudscope/discriminant.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fraudscope/design.hpp"
#include "fraudscope/error.hpp"

namespace fraudscope {

namespace {

constexpr int kMaxRidgeEscalations = 12;

struct ClassMoments {
  std::array<std::size_t, 2> counts{0, 0};
  std::array<Eigen::VectorXd, 2> means;
  std::array<Eigen::MatrixXd, 2> scatter;  // sum of centred outer products
};

ClassMoments class_moments(const Eigen::MatrixXd& x, std::span<const int> labels) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw std::invalid_argument("design rows and labels differ in length");
  }
  require_fittable(labels);
  if (!x.allFinite()) throw DataError("design matrix contains non-finite values");
  const Eigen::Index p = x.cols();
  ClassMoments m;
  for (int k = 0; k < 2; ++k) {
    m.means[k] = Eigen::VectorXd::Zero(p);
    m.scatter[k] = Eigen::MatrixXd::Zero(p, p);
  }
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const int k = labels[static_cast<std::size_t>(i)];
    m.means[k] += x.row(i).transpose();
    ++m.counts[k];
  }
  for (int k = 0; k < 2; ++k) m.means[k] /= static_cast<double>(m.counts[k]);
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const int k = labels[static_cast<std::size_t>(i)];
    const Eigen::VectorXd d = x.row(i).transpose() - m.means[k];
    m.scatter[k] += d * d.transpose();
  }
  return m;
}

// Returns the ridge that made `cov` positive definite.
double regularize(Eigen::MatrixXd& cov, double ridge_scale) {
  const double p = static_cast<double>(cov.rows());
  double base = cov.trace() / p;
  if (!(base > 0.0) || !std::isfinite(base)) base = 1.0;
  double ridge = ridge_scale * base;
  const Eigen::MatrixXd original = cov;
  for (int attempt = 0; attempt <= kMaxRidgeEscalations; ++attempt) {
    cov = original;
    cov.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() == Eigen::Success) return ridge;
    ridge = ridge > 0.0 ? ridge * 10.0 : 1e-12 * base;
  }
  throw DataError("degenerate covariance");
}

}  // namespace

void GaussianClassParams::finalize() {
  for (int k = 0; k < 2; ++k) {
    Eigen::LLT<Eigen::MatrixXd> llt(covariances[k]);
    if (llt.info() != Eigen::Success) throw DataError("degenerate covariance");
    cholesky[k] = llt.matrixL();
    log_det[k] = 2.0 * cholesky[k].diagonal().array().log().sum();
  }
}

double GaussianClassParams::log_density(int label, const Eigen::VectorXd& x) const {
  const Eigen::VectorXd d = x - means[label];
  const Eigen::VectorXd z = cholesky[label].triangularView<Eigen::Lower>().solve(d);
  const double p = static_cast<double>(x.size());
  return -0.5 * (p * std::log(2.0 * std::numbers::pi) + log_det[label] + z.squaredNorm());
}

GaussianClassParams fit_lda(const Eigen::MatrixXd& x, std::span<const int> labels,
                            double ridge_scale) {
  const auto m = class_moments(x, labels);
  const auto n = static_cast<double>(labels.size());
  if (labels.size() < static_cast<std::size_t>(x.cols())) throw DataError("degenerate covariance");

  GaussianClassParams params;
  params.shared_covariance = true;
  for (int k = 0; k < 2; ++k) {
    params.priors[k] = static_cast<double>(m.counts[k]) / n;
    params.means[k] = m.means[k];
  }
  Eigen::MatrixXd pooled = (m.scatter[0] + m.scatter[1]) / std::max(n - 2.0, 1.0);
  params.ridge = regularize(pooled, ridge_scale);
  params.covariances = {pooled, pooled};
  params.finalize();
  return params;
}

GaussianClassParams fit_qda(const Eigen::MatrixXd& x, std::span<const int> labels,
                            double ridge_scale) {
  const auto m = class_moments(x, labels);
  if (m.counts[0] < 2 || m.counts[1] < 2) {
    throw DataError("each class needs at least two members for a covariance");
  }
  const auto n = static_cast<double>(labels.size());
  GaussianClassParams params;
  params.shared_covariance = false;
  for (int k = 0; k < 2; ++k) {
    params.priors[k] = static_cast<double>(m.counts[k]) / n;
    params.means[k] = m.means[k];
    params.covariances[k] = m.scatter[k] / static_cast<double>(m.counts[k] - 1);
    params.ridge = std::max(params.ridge, regularize(params.covariances[k], ridge_scale));
  }
  params.finalize();
  return params;
}

double gaussian_posterior(const GaussianClassParams& params, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != params.dimension()) {
    throw std::invalid_argument("gaussian_posterior: dimension mismatch");
  }
  if (!x.allFinite()) throw std::invalid_argument("gaussian_posterior: non-finite input");
  const double fraud = std::log(params.priors[1]) + params.log_density(1, x);
  const double control = std::log(params.priors[0]) + params.log_density(0, x);
  // logistic of the log-odds, evaluated on the side that cannot overflow
  const double log_odds = fraud - control;
  if (log_odds >= 0.0) return 1.0 / (1.0 + std::exp(-log_odds));
  const double e = std::exp(log_odds);
  return e / (1.0 + e);
}

}  // namespace fraudscope
