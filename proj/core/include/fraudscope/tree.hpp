#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fraudscope/random.hpp"

namespace fraudscope {

enum class SplitCriterion { Gini, SquaredError };

/// Flat node record. A leaf has feature == -1. Rows with x[feature] <=
/// threshold go left.
struct TreeNode {
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  int depth = 0;
  std::size_t count = 0;  // training rows reaching the node (positive weight)
  double weight = 0.0;    // their total weight
  double value = 0.0;     // weighted fraud fraction, or weighted mean target

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct Tree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
  std::size_t n_features = 0;
  SplitCriterion criterion = SplitCriterion::Gini;

  std::size_t leaf_index(std::span<const double> x) const;
  double predict(std::span<const double> x) const { return nodes[leaf_index(x)].value; }
  double predict(const Eigen::VectorXd& x) const {
    return predict(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
  }
  std::size_t depth() const;
  std::size_t leaf_count() const;
  bool operator==(const Tree&) const = default;
};

struct TreeOptions {
  std::size_t max_depth = 5;
  std::size_t min_leaf = 1;
  std::size_t max_features = 0;  // features drawn per node; 0 = all
};

/// Node impurity 2p(1-p) for the two-class Gini index.
double gini(double fraud_weight, double total_weight);

/// Grows a tree on rows with positive weight. Candidate thresholds are the
/// midpoints between consecutive distinct values; the split minimising the
/// weighted child impurity wins, earlier features and thresholds keeping
/// ties. A node becomes a leaf when it is pure, at max_depth, holds fewer than
/// 2 * min_leaf rows, or no split strictly lowers its impurity. `rng` is
/// required when max_features is below the column count.
Tree fit_tree(const Eigen::MatrixXd& x, std::span<const double> targets,
              std::span<const double> weights, SplitCriterion criterion,
              const TreeOptions& options, Rng* rng = nullptr);

/// Classification tree with unit weights; leaf value = fraud fraction.
Tree fit_cart(const Eigen::MatrixXd& x, std::span<const int> labels, const TreeOptions& options = {});

}  // namespace fraudscope
