#include "fraudscope/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fraudscope/logistic.hpp"
#include "fraudscope/random.hpp"

namespace fraudscope {

namespace {

constexpr double kBaseRateClamp = 1e-6;
constexpr double kPerfectStumpError = 1e-10;

void check_labels(const Eigen::MatrixXd& x, std::span<const int> labels) {
  if (static_cast<std::size_t>(x.rows()) != labels.size()) {
    throw std::invalid_argument("design rows and labels differ in length");
  }
  if (labels.empty()) throw std::invalid_argument("empty training set");
  for (int t : labels) {
    if (t != 0 && t != 1) throw std::invalid_argument("labels must be 0 or 1");
  }
}

Eigen::VectorXd row(const Eigen::MatrixXd& x, Eigen::Index i) { return x.row(i).transpose(); }

int vote(const Tree& tree, const Eigen::VectorXd& x) { return tree.predict(x) >= 0.5 ? 1 : 0; }

}  // namespace

double AdaBoostModel::score(const Eigen::VectorXd& x) const {
  double total = 0.0, fraud = 0.0;
  for (std::size_t m = 0; m < stumps.size(); ++m) {
    total += alphas[m];
    if (vote(stumps[m], x) == 1) fraud += alphas[m];
  }
  if (total <= 0.0) return 0.5;
  return std::clamp(fraud / total, 0.0, 1.0);
}

double BoostedTreesModel::raw_score(const Eigen::VectorXd& x) const {
  double f = f0;
  for (const auto& tree : trees) f += shrinkage * tree.predict(x);
  return f;
}

double BoostedTreesModel::score(const Eigen::VectorXd& x) const { return sigmoid(raw_score(x)); }

double RandomForestModel::score(const Eigen::VectorXd& x) const {
  std::size_t fraud = 0;
  for (const auto& tree : trees) fraud += static_cast<std::size_t>(vote(tree, x));
  return static_cast<double>(fraud) / static_cast<double>(trees.size());
}

double mean_log_loss(std::span<const double> f, std::span<const int> labels) {
  double loss = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double z = labels[i] == 1 ? -f[i] : f[i];
    loss += std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
  }
  return loss / static_cast<double>(f.size());
}

AdaBoostModel fit_adaboost(const Eigen::MatrixXd& x, std::span<const int> labels,
                           const AdaBoostOptions& options) {
  if (options.rounds < 1) throw std::invalid_argument("adaboost: rounds must be at least 1");
  check_labels(x, labels);
  const std::size_t n = labels.size();
  std::vector<double> targets(labels.begin(), labels.end());
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  TreeOptions stump;
  stump.max_depth = 1;

  AdaBoostModel model;
  std::vector<int> miss(n);
  for (std::size_t m = 0; m < options.rounds; ++m) {
    Tree g = fit_tree(x, targets, w, SplitCriterion::Gini, stump);
    double err = 0.0, total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      miss[i] = vote(g, row(x, static_cast<Eigen::Index>(i))) != labels[i] ? 1 : 0;
      total += w[i];
      if (miss[i]) err += w[i];
    }
    err /= total;
    if (err >= 0.5) break;
    const bool perfect = err <= 0.0;
    const double e = perfect ? kPerfectStumpError : err;
    const double alpha = std::log((1.0 - e) / e);

    double new_total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (miss[i]) w[i] *= std::exp(alpha);
      new_total += w[i];
    }
    double after = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] /= new_total;
      if (miss[i]) after += w[i];
    }
    model.stumps.push_back(std::move(g));
    model.alphas.push_back(alpha);
    model.trace.push_back({err, alpha, after});
    if (perfect) break;
  }
  return model;
}

BoostedTreesModel fit_boosted_trees(const Eigen::MatrixXd& x, std::span<const int> labels,
                                    const BoostedTreesOptions& options) {
  if (options.rounds < 1) throw std::invalid_argument("boosted trees: rounds must be at least 1");
  if (!(options.shrinkage > 0.0 && options.shrinkage <= 1.0)) {
    throw std::invalid_argument("boosted trees: shrinkage must lie in (0, 1]");
  }
  check_labels(x, labels);
  const std::size_t n = labels.size();
  double rate = 0.0;
  for (int t : labels) rate += t;
  rate = std::clamp(rate / static_cast<double>(n), kBaseRateClamp, 1.0 - kBaseRateClamp);

  BoostedTreesModel model;
  model.f0 = std::log(rate / (1.0 - rate));
  model.shrinkage = options.shrinkage;
  std::vector<double> f(n, model.f0);
  std::vector<double> residual(n);
  const std::vector<double> unit(n, 1.0);
  TreeOptions tree_options;
  tree_options.max_depth = options.max_depth;
  tree_options.min_leaf = options.min_leaf;
  model.training_loss.push_back(mean_log_loss(f, labels));

  for (std::size_t m = 0; m < options.rounds; ++m) {
    for (std::size_t i = 0; i < n; ++i) residual[i] = labels[i] - sigmoid(f[i]);
    Tree h = fit_tree(x, residual, unit, SplitCriterion::SquaredError, tree_options);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] += options.shrinkage * h.predict(row(x, static_cast<Eigen::Index>(i)));
    }
    model.trees.push_back(std::move(h));
    model.training_loss.push_back(mean_log_loss(f, labels));
  }
  return model;
}

RandomForestModel fit_random_forest(const Eigen::MatrixXd& x, std::span<const int> labels,
                                    const RandomForestOptions& options) {
  if (options.n_trees < 1) throw std::invalid_argument("random forest: n_trees must be at least 1");
  check_labels(x, labels);
  const auto p = static_cast<std::size_t>(x.cols());
  std::size_t k = options.features_per_split;
  if (k == 0) k = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(p)))));
  if (k > p) throw std::invalid_argument("random forest: k exceeds the number of features");

  const std::size_t n = labels.size();
  std::vector<double> targets(labels.begin(), labels.end());
  TreeOptions tree_options;
  tree_options.max_depth = options.max_depth;
  tree_options.min_leaf = options.min_leaf;
  tree_options.max_features = k;

  RandomForestModel model;
  model.features_per_split = k;
  model.trees.reserve(options.n_trees);
  std::vector<double> w(n);
  for (std::size_t b = 0; b < options.n_trees; ++b) {
    Rng rng(derive_seed(options.seed, "tree", b));
    if (options.bootstrap) {
      std::fill(w.begin(), w.end(), 0.0);
      for (std::size_t draw = 0; draw < n; ++draw) w[rng.below(n)] += 1.0;
    } else {
      std::fill(w.begin(), w.end(), 1.0);
    }
    model.trees.push_back(fit_tree(x, targets, w, SplitCriterion::Gini, tree_options, &rng));
  }
  return model;
}

}  // namespace fraudscope
