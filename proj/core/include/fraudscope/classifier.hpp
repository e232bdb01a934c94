#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fraudscope/design.hpp"
#include "fraudscope/discriminant.hpp"
#include "fraudscope/ensemble.hpp"
#include "fraudscope/logistic.hpp"
#include "fraudscope/tree.hpp"

namespace fraudscope {

enum class ModelFamily { LDA, QDA, LogisticRegression, AdaBoost, DecisionTree, BoostedTrees, RandomForest };

inline constexpr std::size_t kModelFamilyCount = 7;
const std::array<ModelFamily, kModelFamilyCount>& all_model_families();
/// Short tag used in config and JSON: lda qda lr ab dt bt rf.
std::string_view model_tag(ModelFamily family);
/// Column label as in the published tables: LDA QDA LR AB DT BT RF.
std::string_view model_label(ModelFamily family);
std::optional<ModelFamily> model_from_tag(std::string_view tag);

inline constexpr double kDefaultThreshold = 0.5;

struct ModelSpec {
  ModelFamily family = ModelFamily::DecisionTree;
  double threshold = kDefaultThreshold;
  double ridge_scale = 1e-6;
  LogregOptions logreg;
  TreeOptions tree;
  AdaBoostOptions adaboost;
  BoostedTreesOptions boosted;
  RandomForestOptions forest;

  /// Gaussian models and logistic regression see standardised inputs.
  bool standardizes() const;
};

struct Prediction {
  int label = 0;
  double score = 0.0;
};

/// label = 1 iff score >= threshold.
int predict_label(double score, double threshold = kDefaultThreshold);

class TrainedModel {
 public:
  using Params = std::variant<GaussianClassParams, LogregParams, Tree, AdaBoostModel,
                              BoostedTreesModel, RandomForestModel>;

  /// `data` holds raw ratios; missing cells (NaN) are imputed from this
  /// training sample.
  static TrainedModel fit(const DesignMatrix& data, const ModelSpec& spec);

  /// Raw ratio row in feature order. Throws std::invalid_argument on a
  /// dimension mismatch.
  double score(std::span<const double> raw) const;
  Prediction predict(std::span<const double> raw) const;

  const ModelSpec& spec() const { return spec_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const Preprocessor& preprocessor() const { return preprocessor_; }
  const Params& params() const { return params_; }

  nlohmann::json to_json() const;
  static TrainedModel from_json(const nlohmann::json& doc);

 private:
  ModelSpec spec_;
  std::vector<std::string> feature_names_;
  Preprocessor preprocessor_;
  Params params_;
};

nlohmann::json tree_to_json(const Tree& tree);
Tree tree_from_json(const nlohmann::json& doc);

}  // namespace fraudscope
