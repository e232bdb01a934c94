#include "fraudscope/logistic.hpp"

#include <cmath>
#include <stdexcept>

#include "fraudscope/design.hpp"
#include "fraudscope/error.hpp"

namespace fraudscope {

namespace {

// log(1 + exp(a)) without overflow
double softplus(double a) { return std::max(a, 0.0) + std::log1p(std::exp(-std::abs(a))); }

constexpr double kMinLearningRate = 1e-14;

}  // namespace

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

Eigen::MatrixXd with_intercept(const Eigen::MatrixXd& x) {
  Eigen::MatrixXd out(x.rows(), x.cols() + 1);
  out.col(0).setOnes();
  out.rightCols(x.cols()) = x;
  return out;
}

double cross_entropy(const Eigen::VectorXd& w, const Eigen::MatrixXd& x, std::span<const int> t) {
  const Eigen::VectorXd z = x * w;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    // -ln sigmoid(z) = softplus(-z); -ln(1 - sigmoid(z)) = softplus(z)
    loss += t[static_cast<std::size_t>(i)] == 1 ? softplus(-z(i)) : softplus(z(i));
  }
  return loss;
}

Eigen::VectorXd cross_entropy_gradient(const Eigen::VectorXd& w, const Eigen::MatrixXd& x,
                                       std::span<const int> t) {
  const Eigen::VectorXd z = x * w;
  Eigen::VectorXd residual(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    residual(i) = sigmoid(z(i)) - static_cast<double>(t[static_cast<std::size_t>(i)]);
  }
  return x.transpose() * residual;
}

LogregParams fit_logreg(const Eigen::MatrixXd& x, std::span<const int> labels,
                        const LogregOptions& options) {
  if (!(options.learning_rate > 0.0) || !(options.tol > 0.0)) {
    throw std::invalid_argument("fit_logreg: learning_rate and tol must be positive");
  }
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw std::invalid_argument("design rows and labels differ in length");
  }
  require_fittable(labels);
  const Eigen::MatrixXd xa = with_intercept(x);
  const double n = static_cast<double>(labels.size());

  LogregParams params;
  params.weights = Eigen::VectorXd::Zero(xa.cols());
  double loss = cross_entropy(params.weights, xa, labels);
  double rate = options.learning_rate;
  Eigen::VectorXd gradient = cross_entropy_gradient(params.weights, xa, labels);

  std::size_t iter = 0;
  for (; iter < options.max_iters; ++iter) {
    if (gradient.norm() / n < options.tol) break;
    const Eigen::VectorXd candidate = params.weights - rate * gradient / n;
    const double candidate_loss = cross_entropy(candidate, xa, labels);
    if (!std::isfinite(candidate_loss) || !candidate.allFinite()) {
      throw DataError("divergence; reduce learning_rate");
    }
    if (candidate_loss > loss) {
      rate *= 0.5;
      if (rate < kMinLearningRate) break;
      continue;
    }
    params.weights = candidate;
    loss = candidate_loss;
    gradient = cross_entropy_gradient(params.weights, xa, labels);
  }
  params.iterations = iter;
  params.gradient_norm = gradient.norm() / n;
  params.loss = loss;
  return params;
}

double logreg_score(const LogregParams& params, const Eigen::VectorXd& x) {
  if (x.size() + 1 != params.weights.size()) {
    throw std::invalid_argument("logreg_score: dimension mismatch");
  }
  return sigmoid(params.weights(0) + params.weights.tail(x.size()).dot(x));
}

}  // namespace fraudscope
