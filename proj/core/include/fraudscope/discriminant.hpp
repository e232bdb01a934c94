#pragma once

#include <array>
#include <span>

#include <Eigen/Dense>

namespace fraudscope {

/// Fitted Gaussian class-conditional model. Index 0 is the non-fraud class,
/// index 1 fraud. With a shared covariance both covariance slots hold the
/// pooled matrix (LDA); otherwise each class has its own (QDA).
struct GaussianClassParams {
  bool shared_covariance = true;
  std::array<double, 2> priors{0.5, 0.5};
  std::array<Eigen::VectorXd, 2> means;
  std::array<Eigen::MatrixXd, 2> covariances;  // ridge already added
  double ridge = 0.0;

  // Derived from covariances by finalize().
  std::array<Eigen::MatrixXd, 2> cholesky;
  std::array<double, 2> log_det{0.0, 0.0};

  /// Factorises the covariances. Throws DataError if one is not positive
  /// definite.
  void finalize();

  std::size_t dimension() const { return static_cast<std::size_t>(means[0].size()); }
  /// log N(x; mean_k, cov_k)
  double log_density(int label, const Eigen::VectorXd& x) const;
};

/// Adds ridge_scale * trace/p to the diagonal (trace/p taken as 1 when the
/// covariance is zero) and escalates tenfold until Cholesky succeeds.
GaussianClassParams fit_lda(const Eigen::MatrixXd& x, std::span<const int> labels,
                            double ridge_scale = 1e-6);
GaussianClassParams fit_qda(const Eigen::MatrixXd& x, std::span<const int> labels,
                            double ridge_scale = 1e-6);

/// P(fraud | x) from the two weighted log-densities.
double gaussian_posterior(const GaussianClassParams& params, const Eigen::VectorXd& x);

}  // namespace fraudscope
