#include "fraudscope/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fraudscope/error.hpp"

namespace fraudscope {

namespace {

constexpr double kTieTolerance = 1e-12;

struct Candidate {
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;  // weighted mean child impurity
};

class Grower {
 public:
  Grower(const Eigen::MatrixXd& x, std::span<const double> y, std::span<const double> w,
         SplitCriterion criterion, const TreeOptions& options, Rng* rng)
      : x_(x), y_(y), w_(w), criterion_(criterion), options_(options), rng_(rng) {}

  Tree grow() {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] > 0.0) rows.push_back(i);
    }
    if (rows.empty()) throw DataError("tree: no rows with positive weight");
    tree_.n_features = static_cast<std::size_t>(x_.cols());
    tree_.criterion = criterion_;
    build(rows, 0);
    return std::move(tree_);
  }

 private:
  // Impurity of a node from its weight sums. For squared error this is the
  // weighted variance.
  double impurity(double w, double wy, double wyy) const {
    if (w <= 0.0) return 0.0;
    if (criterion_ == SplitCriterion::Gini) return gini(wy, w);
    return std::max(0.0, (wyy - wy * wy / w) / w);
  }

  std::vector<int> features_for_node() {
    const auto p = static_cast<std::size_t>(x_.cols());
    std::vector<int> all(p);
    std::iota(all.begin(), all.end(), 0);
    const std::size_t k = options_.max_features;
    if (k == 0 || k >= p) return all;
    // partial Fisher-Yates, then ascending so scan order matches the full tree
    for (std::size_t i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(rng_->below(p - i));
      std::swap(all[i], all[j]);
    }
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  }

  int build(const std::vector<std::size_t>& rows, int depth) {
    double w = 0.0, wy = 0.0, wyy = 0.0;
    for (auto i : rows) {
      w += w_[i];
      wy += w_[i] * y_[i];
      wyy += w_[i] * y_[i] * y_[i];
    }
    TreeNode node;
    node.depth = depth;
    node.count = rows.size();
    node.weight = w;
    node.value = wy / w;
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.push_back(node);

    const double parent = impurity(w, wy, wyy);
    if (parent <= 0.0 || static_cast<std::size_t>(depth) >= options_.max_depth ||
        rows.size() < 2 * options_.min_leaf) {
      return index;
    }

    Candidate best;
    best.impurity = parent;
    std::vector<std::size_t> order = rows;
    for (int f : features_for_node()) {
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double va = x_(static_cast<Eigen::Index>(a), f);
        const double vb = x_(static_cast<Eigen::Index>(b), f);
        return va < vb || (va == vb && a < b);
      });
      double lw = 0.0, lwy = 0.0, lwyy = 0.0;
      for (std::size_t pos = 0; pos + 1 < order.size(); ++pos) {
        const auto i = order[pos];
        lw += w_[i];
        lwy += w_[i] * y_[i];
        lwyy += w_[i] * y_[i] * y_[i];
        const double lo = x_(static_cast<Eigen::Index>(i), f);
        const double hi = x_(static_cast<Eigen::Index>(order[pos + 1]), f);
        if (!(lo < hi)) continue;
        const std::size_t n_left = pos + 1;
        if (n_left < options_.min_leaf || order.size() - n_left < options_.min_leaf) continue;
        const double rw = w - lw;
        const double score =
            (lw * impurity(lw, lwy, lwyy) + rw * impurity(rw, wy - lwy, wyy - lwyy)) / w;
        if (best.feature < 0 ? score < parent - kTieTolerance
                             : score < best.impurity - kTieTolerance) {
          double mid = lo + (hi - lo) / 2.0;
          if (!(mid < hi)) mid = lo;
          best = {f, mid, score};
        }
      }
    }
    if (best.feature < 0) return index;

    std::vector<std::size_t> left, right;
    for (auto i : rows) {
      (x_(static_cast<Eigen::Index>(i), best.feature) <= best.threshold ? left : right).push_back(i);
    }
    const int l = build(left, depth + 1);
    const int r = build(right, depth + 1);
    auto& n = tree_.nodes[static_cast<std::size_t>(index)];
    n.feature = best.feature;
    n.threshold = best.threshold;
    n.left = l;
    n.right = r;
    return index;
  }

  const Eigen::MatrixXd& x_;
  std::span<const double> y_;
  std::span<const double> w_;
  SplitCriterion criterion_;
  const TreeOptions& options_;
  Rng* rng_;
  Tree tree_;
};

}  // namespace

double gini(double fraud_weight, double total_weight) {
  if (total_weight <= 0.0) return 0.0;
  const double p = fraud_weight / total_weight;
  return 2.0 * p * (1.0 - p);
}

std::size_t Tree::leaf_index(std::span<const double> x) const {
  if (x.size() != n_features) throw std::invalid_argument("tree: dimension mismatch");
  std::size_t i = 0;
  while (!nodes[i].is_leaf()) {
    const auto& n = nodes[i];
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
  }
  return i;
}

std::size_t Tree::depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth);
  return static_cast<std::size_t>(d);
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

Tree fit_tree(const Eigen::MatrixXd& x, std::span<const double> targets,
              std::span<const double> weights, SplitCriterion criterion,
              const TreeOptions& options, Rng* rng) {
  const auto n = static_cast<std::size_t>(x.rows());
  if (targets.size() != n || weights.size() != n) {
    throw std::invalid_argument("tree: design rows, targets and weights differ in length");
  }
  if (x.cols() == 0) throw std::invalid_argument("tree: no features");
  if (options.min_leaf < 1) throw std::invalid_argument("tree: min_leaf must be at least 1");
  if (options.max_features > static_cast<std::size_t>(x.cols())) {
    throw std::invalid_argument("tree: more features per split than columns");
  }
  if (options.max_features != 0 && options.max_features < static_cast<std::size_t>(x.cols()) &&
      rng == nullptr) {
    throw std::invalid_argument("tree: feature sampling needs a random stream");
  }
  if (!x.allFinite()) throw DataError("tree: design matrix contains non-finite values");
  return Grower(x, targets, weights, criterion, options, rng).grow();
}

Tree fit_cart(const Eigen::MatrixXd& x, std::span<const int> labels, const TreeOptions& options) {
  std::vector<double> y(labels.begin(), labels.end());
  std::vector<double> w(labels.size(), 1.0);
  for (int t : labels) {
    if (t != 0 && t != 1) throw std::invalid_argument("labels must be 0 or 1");
  }
  return fit_tree(x, y, w, SplitCriterion::Gini, options);
}

}  // namespace fraudscope
