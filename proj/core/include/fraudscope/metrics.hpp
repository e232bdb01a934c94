#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fraudscope/classifier.hpp"
#include "fraudscope/industry.hpp"
#include "fraudscope/ratios.hpp"
#include "fraudscope/sampling.hpp"
#include "fraudscope/stats.hpp"

namespace fraudscope {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
  bool operator==(const ConfusionMatrix&) const = default;
};

/// Positives are fraud (label 1).
ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> predictions);

enum class Metric { Accuracy, Specificity, Sensitivity, Precision, GMean, FMeasure, Auc };
inline constexpr std::size_t kMetricCount = 7;
const std::array<Metric, kMetricCount>& all_metrics();
/// Accuracy, Specificity, Sensitivity, Precision, G-Mean, F-Measure, AUC
std::string_view metric_label(Metric metric);
/// accuracy, specificity, sensitivity, precision, g_mean, f_measure, auc
std::string_view metric_key(Metric metric);

/// A metric is empty when its denominator is zero.
struct MetricSet {
  std::array<std::optional<double>, kMetricCount> values{};

  std::optional<double>& operator[](Metric m) { return values[static_cast<std::size_t>(m)]; }
  const std::optional<double>& operator[](Metric m) const { return values[static_cast<std::size_t>(m)]; }
  bool operator==(const MetricSet&) const = default;
};

/// Everything except AUC, which needs scores.
MetricSet classification_metrics(const ConfusionMatrix& cm);

/// Trapezoidal area under the ROC curve with tied scores grouped. Throws
/// DataError("AUC undefined") unless both classes are present.
double roc_auc(std::span<const int> labels, std::span<const double> scores);

struct CrossValidationOptions {
  bool hard_auc = false;            // AUC from 0/1 predictions instead of scores
  bool selection_in_folds = false;  // rerun select_features on each training split
  SelectionOptions selection;
};

struct FoldResult {
  std::size_t fold = 0;
  std::vector<Ratio> features;
  ConfusionMatrix cm;
  MetricSet metrics;
};

struct EvaluationReport {
  Industry industry = Industry::Agriculture;
  ModelFamily family = ModelFamily::DecisionTree;
  std::vector<FoldResult> folds;
  MetricSet mean;                                   // over folds where defined
  std::array<std::size_t, kMetricCount> defined{};  // folds contributing to each mean
  std::vector<std::string> warnings;
};

/// For each fold: fit on the other folds (imputation and scaling from those
/// rows only), score the held-out fold. Forest seeds are re-derived per fold
/// from spec.forest.seed. A fold whose fit fails with DataError contributes
/// no metrics and a warning.
EvaluationReport cross_validate(std::span<const Observation> observations, const FoldAssignment& folds,
                                const ModelSpec& spec, std::span<const Ratio> features,
                                Industry industry, const CrossValidationOptions& options = {});

nlohmann::json metrics_to_json(const MetricSet& metrics);
nlohmann::json evaluation_to_json(const EvaluationReport& report);

/// Aligned table, one row per model, columns in the published order.
std::string format_evaluation_table(std::span<const EvaluationReport> reports);

}  // namespace fraudscope
