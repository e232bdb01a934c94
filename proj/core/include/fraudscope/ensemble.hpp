#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fraudscope/tree.hpp"

namespace fraudscope {

struct AdaBoostRound {
  double error = 0.0;        // weighted error of G_m before reweighting
  double alpha = 0.0;
  double error_after = 0.0;  // weighted error of G_m under the updated weights
};

struct AdaBoostModel {
  std::vector<Tree> stumps;
  std::vector<double> alphas;
  std::vector<AdaBoostRound> trace;

  /// sum alpha_m [G_m(x) = 1] / sum alpha_m; 0.5 for an empty vote.
  double score(const Eigen::VectorXd& x) const;
};

struct BoostedTreesModel {
  double f0 = 0.0;
  double shrinkage = 0.1;
  std::vector<Tree> trees;
  std::vector<double> training_loss;  // mean log-loss after F_0, F_1, ..., F_M

  double raw_score(const Eigen::VectorXd& x) const;
  double score(const Eigen::VectorXd& x) const;
};

struct RandomForestModel {
  std::vector<Tree> trees;
  std::size_t features_per_split = 1;

  /// Fraction of trees voting fraud.
  double score(const Eigen::VectorXd& x) const;
};

struct AdaBoostOptions {
  std::size_t rounds = 100;
};

struct BoostedTreesOptions {
  std::size_t rounds = 100;
  double shrinkage = 0.1;
  std::size_t max_depth = 5;
  std::size_t min_leaf = 1;
};

struct RandomForestOptions {
  std::size_t n_trees = 200;
  std::size_t features_per_split = 0;  // 0 = floor(sqrt(p)), at least 1
  std::size_t max_depth = 5;
  std::size_t min_leaf = 1;
  bool bootstrap = true;  // false grows every tree on the full sample
  std::uint64_t seed = 0;
};

AdaBoostModel fit_adaboost(const Eigen::MatrixXd& x, std::span<const int> labels,
                           const AdaBoostOptions& options = {});

/// F_0 is the log-odds of the base rate with the rate clamped to
/// [1e-6, 1 - 1e-6]. Each round fits a squared-error tree to t - sigmoid(F)
/// and adds shrinkage times its leaf means.
BoostedTreesModel fit_boosted_trees(const Eigen::MatrixXd& x, std::span<const int> labels,
                                    const BoostedTreesOptions& options = {});

/// Tree b bootstraps with derive_seed(seed, "tree", b) and draws its split
/// features from the same stream.
RandomForestModel fit_random_forest(const Eigen::MatrixXd& x, std::span<const int> labels,
                                    const RandomForestOptions& options = {});

/// Mean logistic loss of raw scores f against labels.
double mean_log_loss(std::span<const double> f, std::span<const int> labels);

}  // namespace fraudscope
