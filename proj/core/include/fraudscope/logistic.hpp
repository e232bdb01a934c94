#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace fraudscope {

struct LogregOptions {
  double learning_rate = 0.1;
  std::size_t max_iters = 5000;
  double tol = 1e-6;
};

struct LogregParams {
  Eigen::VectorXd weights;  // weights[0] is the intercept
  std::size_t iterations = 0;
  double gradient_norm = 0.0;  // ||grad E|| / n at exit
  double loss = 0.0;           // E(w) at exit
};

double sigmoid(double z);

/// Prepends a column of ones.
Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x);

/// E(w) = -sum_n [t_n ln y_n + (1 - t_n) ln(1 - y_n)], y_n = sigmoid(w . x_n).
/// `x` already carries the intercept column.
double cross_entropy(const Eigen::VectorXd& w, const Eigen::MatrixXd& x, std::span<const int> t);

/// grad E(w) = sum_n (y_n - t_n) x_n
Eigen::VectorXd cross_entropy_gradient(const Eigen::VectorXd& w, const Eigen::MatrixXd& x,
                                       std::span<const int> t);

/// Full-batch gradient descent from w = 0 with step w -= lr * grad / n. A step
/// that raises E is rejected and the rate halved, so E never increases across
/// accepted steps. Stops when ||grad|| / n < tol or after max_iters.
/// Throws DataError("divergence; reduce learning_rate") on a non-finite loss.
LogregParams fit_logreg(const Eigen::MatrixXd& x, std::span<const int> labels,
                        const LogregOptions& options = {});

double logreg_score(const LogregParams& params, const Eigen::VectorXd& x);

}  // namespace fraudscope
