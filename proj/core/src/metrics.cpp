#include "fraudscope/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fraudscope/design.hpp"
#include "fraudscope/error.hpp"
#include "fraudscope/random.hpp"

namespace fraudscope {

using nlohmann::json;

namespace {

struct MetricInfo {
  Metric metric;
  const char* label;
  const char* key;
};

constexpr std::array<MetricInfo, kMetricCount> kMetrics{{
    {Metric::Accuracy, "Accuracy", "accuracy"},
    {Metric::Specificity, "Specificity", "specificity"},
    {Metric::Sensitivity, "Sensitivity", "sensitivity"},
    {Metric::Precision, "Precision", "precision"},
    {Metric::GMean, "G-Mean", "g_mean"},
    {Metric::FMeasure, "F-Measure", "f_measure"},
    {Metric::Auc, "AUC", "auc"},
}};

std::optional<double> ratio_of(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

const std::array<Metric, kMetricCount>& all_metrics() {
  static const std::array<Metric, kMetricCount> metrics = [] {
    std::array<Metric, kMetricCount> out{};
    for (std::size_t i = 0; i < kMetricCount; ++i) out[i] = kMetrics[i].metric;
    return out;
  }();
  return metrics;
}

std::string_view metric_label(Metric metric) { return kMetrics[static_cast<std::size_t>(metric)].label; }
std::string_view metric_key(Metric metric) { return kMetrics[static_cast<std::size_t>(metric)].key; }

ConfusionMatrix confusion(std::span<const int> labels, std::span<const int> predictions) {
  if (labels.size() != predictions.size()) {
    throw std::invalid_argument("confusion: labels and predictions differ in length");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const bool actual = labels[i] == 1;
    const bool predicted = predictions[i] == 1;
    if (actual && predicted) ++cm.tp;
    else if (actual) ++cm.fn;
    else if (predicted) ++cm.fp;
    else ++cm.tn;
  }
  return cm;
}

MetricSet classification_metrics(const ConfusionMatrix& cm) {
  MetricSet m;
  m[Metric::Accuracy] = ratio_of(cm.tp + cm.tn, cm.total());
  m[Metric::Specificity] = ratio_of(cm.tn, cm.tn + cm.fp);
  m[Metric::Sensitivity] = ratio_of(cm.tp, cm.tp + cm.fn);
  m[Metric::Precision] = ratio_of(cm.tp, cm.tp + cm.fp);
  if (m[Metric::Sensitivity] && m[Metric::Specificity]) {
    m[Metric::GMean] = std::sqrt(*m[Metric::Sensitivity] * *m[Metric::Specificity]);
  }
  // 2PR/(P+R) = 2tp/(2tp+fp+fn); undefined only when both inputs are
  if (m[Metric::Sensitivity] && m[Metric::Precision]) {
    const double p = *m[Metric::Precision];
    const double r = *m[Metric::Sensitivity];
    m[Metric::FMeasure] = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
  }
  return m;
}

double roc_auc(std::span<const int> labels, std::span<const double> scores) {
  if (labels.size() != scores.size()) {
    throw std::invalid_argument("roc_auc: labels and scores differ in length");
  }
  std::size_t pos = 0;
  for (int t : labels) pos += t == 1 ? 1 : 0;
  const std::size_t neg = labels.size() - pos;
  if (pos == 0 || neg == 0) throw DataError("AUC undefined");

  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  // Walk thresholds from the top; integer counts keep the sum exact until the
  // final division.
  std::size_t tp = 0, fp = 0;
  double twice_area = 0.0;  // in units of (1/pos) * (1/neg)
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i, group_tp = 0, group_fp = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] == 1 ? group_tp : group_fp) += 1;
      ++j;
    }
    twice_area += static_cast<double>(group_fp) * static_cast<double>(2 * tp + group_tp);
    tp += group_tp;
    fp += group_fp;
    i = j;
  }
  return twice_area / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

EvaluationReport cross_validate(std::span<const Observation> observations, const FoldAssignment& folds,
                                const ModelSpec& spec, std::span<const Ratio> features,
                                Industry industry, const CrossValidationOptions& options) {
  if (folds.fold_of.size() != observations.size()) {
    throw std::invalid_argument("cross_validate: fold assignment does not match the sample");
  }
  if (!options.selection_in_folds && features.empty()) {
    throw std::invalid_argument("cross_validate: feature set is empty");
  }
  EvaluationReport report;
  report.industry = industry;
  report.family = spec.family;

  for (std::size_t fold = 0; fold < folds.k; ++fold) {
    const auto train_idx = folds.train_indices(fold);
    const auto test_idx = folds.test_indices(fold);
    FoldResult result;
    result.fold = fold;
    const std::string tag = "fold " + std::to_string(fold) + ": ";
    try {
      std::vector<Observation> train, test;
      for (auto i : train_idx) train.push_back(observations[i]);
      for (auto i : test_idx) test.push_back(observations[i]);
      if (test.empty()) {
        report.warnings.push_back(tag + "no held-out observations");
        report.folds.push_back(std::move(result));
        continue;
      }
      if (options.selection_in_folds) {
        result.features = select_features(train, industry, options.selection).selected;
      } else {
        result.features.assign(features.begin(), features.end());
      }
      ModelSpec fold_spec = spec;
      fold_spec.forest.seed = derive_seed(spec.forest.seed, "fold", fold);
      const auto model = TrainedModel::fit(make_design(train, result.features), fold_spec);
      const auto held_out = make_design(test, result.features);
      std::vector<int> predicted(held_out.rows());
      std::vector<double> scores(held_out.rows());
      for (std::size_t r = 0; r < held_out.rows(); ++r) {
        const auto p = model.predict(row_values(held_out.x, r));
        predicted[r] = p.label;
        scores[r] = p.score;
      }
      result.cm = confusion(held_out.labels, predicted);
      result.metrics = classification_metrics(result.cm);
      const auto fraud = held_out.count_label(1);
      if (fraud == 0 || fraud == held_out.rows()) {
        report.warnings.push_back(tag + "held-out fold has a single class; AUC undefined");
      } else if (options.hard_auc) {
        std::vector<double> hard(predicted.begin(), predicted.end());
        result.metrics[Metric::Auc] = roc_auc(held_out.labels, hard);
      } else {
        result.metrics[Metric::Auc] = roc_auc(held_out.labels, scores);
      }
    } catch (const DataError& e) {
      report.warnings.push_back(tag + e.what());
      result.metrics = MetricSet{};
    }
    report.folds.push_back(std::move(result));
  }

  for (auto metric : all_metrics()) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& f : report.folds) {
      if (const auto& v = f.metrics[metric]) {
        sum += *v;
        ++n;
      }
    }
    report.defined[static_cast<std::size_t>(metric)] = n;
    if (n > 0) report.mean[metric] = sum / static_cast<double>(n);
    if (n < report.folds.size() && n > 0) {
      report.warnings.push_back(std::string(metric_label(metric)) + " undefined in " +
                                std::to_string(report.folds.size() - n) + " fold(s); mean over " +
                                std::to_string(n));
    } else if (n == 0) {
      report.warnings.push_back(std::string(metric_label(metric)) + " undefined in every fold");
    }
  }
  return report;
}

json metrics_to_json(const MetricSet& metrics) {
  json out = json::object();
  for (auto m : all_metrics()) {
    const auto& v = metrics[m];
    out[std::string(metric_key(m))] = v ? json(*v) : json(nullptr);
  }
  return out;
}

json evaluation_to_json(const EvaluationReport& report) {
  json folds = json::array();
  for (const auto& f : report.folds) {
    json features = json::array();
    for (auto r : f.features) features.push_back(std::string(ratio_name(r)));
    folds.push_back({{"fold", f.fold},
                     {"features", features},
                     {"confusion", {{"tp", f.cm.tp}, {"fp", f.cm.fp}, {"fn", f.cm.fn}, {"tn", f.cm.tn}}},
                     {"metrics", metrics_to_json(f.metrics)}});
  }
  json defined = json::object();
  for (auto m : all_metrics()) defined[std::string(metric_key(m))] = report.defined[static_cast<std::size_t>(m)];
  return {{"industry", std::string(industry_slug(report.industry))},
          {"model", std::string(model_label(report.family))},
          {"mean", metrics_to_json(report.mean)},
          {"defined_folds", defined},
          {"folds", folds},
          {"warnings", report.warnings}};
}

std::string format_evaluation_table(std::span<const EvaluationReport> reports) {
  std::ostringstream out;
  char cell[32];
  std::snprintf(cell, sizeof cell, "%-6s", "Model");
  out << cell;
  for (auto m : all_metrics()) {
    std::snprintf(cell, sizeof cell, " %12s", std::string(metric_label(m)).c_str());
    out << cell;
  }
  out << '\n';
  for (const auto& r : reports) {
    std::snprintf(cell, sizeof cell, "%-6s", std::string(model_label(r.family)).c_str());
    out << cell;
    for (auto m : all_metrics()) {
      if (const auto& v = r.mean[m]) {
        std::snprintf(cell, sizeof cell, " %12.3f", *v);
      } else {
        std::snprintf(cell, sizeof cell, " %12s", "n/a");
      }
      out << cell;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace fraudscope
