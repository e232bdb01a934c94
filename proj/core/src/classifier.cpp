#include "fraudscope/classifier.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fraudscope/error.hpp"

namespace fraudscope {

using nlohmann::json;

namespace {

constexpr const char* kFormat = "fraudscope-model";
constexpr int kFormatVersion = 1;

struct FamilyInfo {
  ModelFamily family;
  const char* tag;
  const char* label;
};

constexpr std::array<FamilyInfo, kModelFamilyCount> kFamilies{{
    {ModelFamily::LDA, "lda", "LDA"},
    {ModelFamily::QDA, "qda", "QDA"},
    {ModelFamily::LogisticRegression, "lr", "LR"},
    {ModelFamily::AdaBoost, "ab", "AB"},
    {ModelFamily::DecisionTree, "dt", "DT"},
    {ModelFamily::BoostedTrees, "bt", "BT"},
    {ModelFamily::RandomForest, "rf", "RF"},
}};

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vector_from(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
  return rows;
}

Eigen::MatrixXd matrix_from(const json& j) {
  const auto n = static_cast<Eigen::Index>(j.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto r = vector_from(j.at(static_cast<std::size_t>(i)));
    if (r.size() != n) throw DataError("model: covariance is not square");
    m.row(i) = r.transpose();
  }
  return m;
}

json trees_json(const std::vector<Tree>& trees) {
  json out = json::array();
  for (const auto& t : trees) out.push_back(tree_to_json(t));
  return out;
}

std::vector<Tree> trees_from(const json& j) {
  std::vector<Tree> out;
  for (const auto& t : j) out.push_back(tree_from_json(t));
  return out;
}

json hyperparameters(const ModelSpec& s) {
  json h;
  h["threshold"] = s.threshold;
  switch (s.family) {
    case ModelFamily::LDA:
    case ModelFamily::QDA:
      h["ridge_scale"] = s.ridge_scale;
      break;
    case ModelFamily::LogisticRegression:
      h["learning_rate"] = s.logreg.learning_rate;
      h["max_iters"] = s.logreg.max_iters;
      h["tol"] = s.logreg.tol;
      break;
    case ModelFamily::DecisionTree:
      h["max_depth"] = s.tree.max_depth;
      h["min_leaf"] = s.tree.min_leaf;
      break;
    case ModelFamily::AdaBoost:
      h["rounds"] = s.adaboost.rounds;
      break;
    case ModelFamily::BoostedTrees:
      h["rounds"] = s.boosted.rounds;
      h["shrinkage"] = s.boosted.shrinkage;
      h["max_depth"] = s.boosted.max_depth;
      h["min_leaf"] = s.boosted.min_leaf;
      break;
    case ModelFamily::RandomForest:
      h["n_trees"] = s.forest.n_trees;
      h["features_per_split"] = s.forest.features_per_split;
      h["max_depth"] = s.forest.max_depth;
      h["min_leaf"] = s.forest.min_leaf;
      h["bootstrap"] = s.forest.bootstrap;
      h["seed"] = s.forest.seed;
      break;
  }
  return h;
}

ModelSpec spec_from(ModelFamily family, const json& h) {
  ModelSpec s;
  s.family = family;
  s.threshold = h.at("threshold").get<double>();
  switch (family) {
    case ModelFamily::LDA:
    case ModelFamily::QDA:
      s.ridge_scale = h.at("ridge_scale").get<double>();
      break;
    case ModelFamily::LogisticRegression:
      s.logreg.learning_rate = h.at("learning_rate").get<double>();
      s.logreg.max_iters = h.at("max_iters").get<std::size_t>();
      s.logreg.tol = h.at("tol").get<double>();
      break;
    case ModelFamily::DecisionTree:
      s.tree.max_depth = h.at("max_depth").get<std::size_t>();
      s.tree.min_leaf = h.at("min_leaf").get<std::size_t>();
      break;
    case ModelFamily::AdaBoost:
      s.adaboost.rounds = h.at("rounds").get<std::size_t>();
      break;
    case ModelFamily::BoostedTrees:
      s.boosted.rounds = h.at("rounds").get<std::size_t>();
      s.boosted.shrinkage = h.at("shrinkage").get<double>();
      s.boosted.max_depth = h.at("max_depth").get<std::size_t>();
      s.boosted.min_leaf = h.at("min_leaf").get<std::size_t>();
      break;
    case ModelFamily::RandomForest:
      s.forest.n_trees = h.at("n_trees").get<std::size_t>();
      s.forest.features_per_split = h.at("features_per_split").get<std::size_t>();
      s.forest.max_depth = h.at("max_depth").get<std::size_t>();
      s.forest.min_leaf = h.at("min_leaf").get<std::size_t>();
      s.forest.bootstrap = h.at("bootstrap").get<bool>();
      s.forest.seed = h.at("seed").get<std::uint64_t>();
      break;
  }
  return s;
}

struct ParamsToJson {
  json operator()(const GaussianClassParams& g) const {
    json j;
    j["shared_covariance"] = g.shared_covariance;
    j["priors"] = g.priors;
    j["means"] = {vector_json(g.means[0]), vector_json(g.means[1])};
    j["ridge"] = g.ridge;
    if (g.shared_covariance) {
      j["covariance"] = matrix_json(g.covariances[0]);
    } else {
      j["covariances"] = {matrix_json(g.covariances[0]), matrix_json(g.covariances[1])};
    }
    return j;
  }
  json operator()(const LogregParams& p) const {
    return {{"weights", vector_json(p.weights)},
            {"iterations", p.iterations},
            {"gradient_norm", p.gradient_norm},
            {"loss", p.loss}};
  }
  json operator()(const Tree& t) const { return tree_to_json(t); }
  json operator()(const AdaBoostModel& m) const {
    json trace = json::array();
    for (const auto& r : m.trace) trace.push_back({r.error, r.alpha, r.error_after});
    return {{"alphas", m.alphas}, {"stumps", trees_json(m.stumps)}, {"trace", trace}};
  }
  json operator()(const BoostedTreesModel& m) const {
    return {{"f0", m.f0},
            {"shrinkage", m.shrinkage},
            {"trees", trees_json(m.trees)},
            {"training_loss", m.training_loss}};
  }
  json operator()(const RandomForestModel& m) const {
    return {{"features_per_split", m.features_per_split}, {"trees", trees_json(m.trees)}};
  }
};

TrainedModel::Params params_from(ModelFamily family, const json& j) {
  switch (family) {
    case ModelFamily::LDA:
    case ModelFamily::QDA: {
      GaussianClassParams g;
      g.shared_covariance = j.at("shared_covariance").get<bool>();
      g.priors = j.at("priors").get<std::array<double, 2>>();
      g.means = {vector_from(j.at("means").at(0)), vector_from(j.at("means").at(1))};
      g.ridge = j.at("ridge").get<double>();
      if (g.shared_covariance) {
        const auto c = matrix_from(j.at("covariance"));
        g.covariances = {c, c};
      } else {
        g.covariances = {matrix_from(j.at("covariances").at(0)), matrix_from(j.at("covariances").at(1))};
      }
      g.finalize();
      return g;
    }
    case ModelFamily::LogisticRegression: {
      LogregParams p;
      p.weights = vector_from(j.at("weights"));
      p.iterations = j.at("iterations").get<std::size_t>();
      p.gradient_norm = j.at("gradient_norm").get<double>();
      p.loss = j.at("loss").get<double>();
      return p;
    }
    case ModelFamily::DecisionTree:
      return tree_from_json(j);
    case ModelFamily::AdaBoost: {
      AdaBoostModel m;
      m.alphas = j.at("alphas").get<std::vector<double>>();
      m.stumps = trees_from(j.at("stumps"));
      for (const auto& r : j.at("trace")) {
        m.trace.push_back({r.at(0).get<double>(), r.at(1).get<double>(), r.at(2).get<double>()});
      }
      return m;
    }
    case ModelFamily::BoostedTrees: {
      BoostedTreesModel m;
      m.f0 = j.at("f0").get<double>();
      m.shrinkage = j.at("shrinkage").get<double>();
      m.trees = trees_from(j.at("trees"));
      m.training_loss = j.at("training_loss").get<std::vector<double>>();
      return m;
    }
    case ModelFamily::RandomForest: {
      RandomForestModel m;
      m.features_per_split = j.at("features_per_split").get<std::size_t>();
      m.trees = trees_from(j.at("trees"));
      return m;
    }
  }
  throw std::logic_error("unknown model family");
}

}  // namespace

const std::array<ModelFamily, kModelFamilyCount>& all_model_families() {
  static const std::array<ModelFamily, kModelFamilyCount> families = [] {
    std::array<ModelFamily, kModelFamilyCount> out{};
    for (std::size_t i = 0; i < kFamilies.size(); ++i) out[i] = kFamilies[i].family;
    return out;
  }();
  return families;
}

std::string_view model_tag(ModelFamily family) { return kFamilies[static_cast<std::size_t>(family)].tag; }

std::string_view model_label(ModelFamily family) {
  return kFamilies[static_cast<std::size_t>(family)].label;
}

std::optional<ModelFamily> model_from_tag(std::string_view tag) {
  for (const auto& f : kFamilies) {
    if (tag == f.tag) return f.family;
  }
  return std::nullopt;
}

bool ModelSpec::standardizes() const {
  return family == ModelFamily::LDA || family == ModelFamily::QDA ||
         family == ModelFamily::LogisticRegression;
}

int predict_label(double score, double threshold) { return score >= threshold ? 1 : 0; }

TrainedModel TrainedModel::fit(const DesignMatrix& data, const ModelSpec& spec) {
  if (data.cols() == 0) throw std::invalid_argument("model: feature set is empty");
  TrainedModel model;
  model.spec_ = spec;
  model.feature_names_ = data.feature_names;
  model.preprocessor_ = Preprocessor::fit(data.x, spec.standardizes());
  const Eigen::MatrixXd x = model.preprocessor_.transform(data.x);
  const std::span<const int> t(data.labels);
  switch (spec.family) {
    case ModelFamily::LDA:
      model.params_ = fit_lda(x, t, spec.ridge_scale);
      break;
    case ModelFamily::QDA:
      model.params_ = fit_qda(x, t, spec.ridge_scale);
      break;
    case ModelFamily::LogisticRegression:
      model.params_ = fit_logreg(x, t, spec.logreg);
      break;
    case ModelFamily::DecisionTree:
      model.params_ = fit_cart(x, t, spec.tree);
      break;
    case ModelFamily::AdaBoost:
      model.params_ = fit_adaboost(x, t, spec.adaboost);
      break;
    case ModelFamily::BoostedTrees:
      model.params_ = fit_boosted_trees(x, t, spec.boosted);
      break;
    case ModelFamily::RandomForest:
      model.params_ = fit_random_forest(x, t, spec.forest);
      break;
  }
  return model;
}

double TrainedModel::score(std::span<const double> raw) const {
  if (raw.size() != feature_names_.size()) {
    throw std::invalid_argument("model: expected " + std::to_string(feature_names_.size()) +
                                " features, got " + std::to_string(raw.size()));
  }
  const Eigen::VectorXd x = preprocessor_.transform_row(raw);
  struct Scorer {
    const Eigen::VectorXd& x;
    double operator()(const GaussianClassParams& g) const { return gaussian_posterior(g, x); }
    double operator()(const LogregParams& p) const { return logreg_score(p, x); }
    double operator()(const Tree& t) const { return t.predict(x); }
    double operator()(const AdaBoostModel& m) const { return m.score(x); }
    double operator()(const BoostedTreesModel& m) const { return m.score(x); }
    double operator()(const RandomForestModel& m) const { return m.score(x); }
  };
  return std::visit(Scorer{x}, params_);
}

Prediction TrainedModel::predict(std::span<const double> raw) const {
  const double s = score(raw);
  return {predict_label(s, spec_.threshold), s};
}

json TrainedModel::to_json() const {
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kFormatVersion;
  doc["family"] = model_tag(spec_.family);
  doc["hyperparameters"] = hyperparameters(spec_);
  doc["features"] = feature_names_;
  doc["preprocessing"] = {{"medians", preprocessor_.medians},
                          {"means", preprocessor_.means},
                          {"scales", preprocessor_.scales},
                          {"standardize", preprocessor_.standardize}};
  doc["parameters"] = std::visit(ParamsToJson{}, params_);
  return doc;
}

TrainedModel TrainedModel::from_json(const json& doc) {
  try {
    if (doc.at("format").get<std::string>() != kFormat) throw DataError("model: unknown format");
    if (doc.at("version").get<int>() != kFormatVersion) throw DataError("model: unsupported version");
    const auto family = model_from_tag(doc.at("family").get<std::string>());
    if (!family) throw DataError("model: unknown family");
    TrainedModel model;
    model.spec_ = spec_from(*family, doc.at("hyperparameters"));
    model.feature_names_ = doc.at("features").get<std::vector<std::string>>();
    const auto& pre = doc.at("preprocessing");
    model.preprocessor_.medians = pre.at("medians").get<std::vector<double>>();
    model.preprocessor_.means = pre.at("means").get<std::vector<double>>();
    model.preprocessor_.scales = pre.at("scales").get<std::vector<double>>();
    model.preprocessor_.standardize = pre.at("standardize").get<bool>();
    model.params_ = params_from(*family, doc.at("parameters"));
    return model;
  } catch (const json::exception& e) {
    throw DataError(std::string("model: malformed document: ") + e.what());
  }
}

json tree_to_json(const Tree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    nodes.push_back({n.feature, n.threshold, n.left, n.right, n.depth, n.count, n.weight, n.value});
  }
  return {{"criterion", tree.criterion == SplitCriterion::Gini ? "gini" : "squared_error"},
          {"n_features", tree.n_features},
          {"nodes", nodes}};
}

Tree tree_from_json(const json& doc) {
  Tree tree;
  const auto criterion = doc.at("criterion").get<std::string>();
  if (criterion == "gini") {
    tree.criterion = SplitCriterion::Gini;
  } else if (criterion == "squared_error") {
    tree.criterion = SplitCriterion::SquaredError;
  } else {
    throw DataError("model: unknown split criterion");
  }
  tree.n_features = doc.at("n_features").get<std::size_t>();
  const auto& nodes = doc.at("nodes");
  for (const auto& n : nodes) {
    TreeNode node;
    node.feature = n.at(0).get<int>();
    node.threshold = n.at(1).get<double>();
    node.left = n.at(2).get<int>();
    node.right = n.at(3).get<int>();
    node.depth = n.at(4).get<int>();
    node.count = n.at(5).get<std::size_t>();
    node.weight = n.at(6).get<double>();
    node.value = n.at(7).get<double>();
    tree.nodes.push_back(node);
  }
  const auto size = static_cast<int>(tree.nodes.size());
  if (size == 0) throw DataError("model: tree has no nodes");
  for (int i = 0; i < size; ++i) {
    const auto& n = tree.nodes[static_cast<std::size_t>(i)];
    if (n.is_leaf()) continue;
    // children always follow their parent, which also rules out cycles
    if (n.left <= i || n.left >= size || n.right <= i || n.right >= size ||
        n.feature >= static_cast<int>(tree.n_features)) {
      throw DataError("model: tree node out of range");
    }
  }
  return tree;
}

}  // namespace fraudscope
