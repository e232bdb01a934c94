#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <nlohmann/json.hpp>

#include "fraudscope/error.hpp"
#include "fraudscope/metrics.hpp"
#include "fraudscope/sampling.hpp"
#include "fraudscope/synth.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace fraudscope;

namespace {

ConfusionMatrix cm(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) { return {tp, fp, fn, tn}; }

double value(const MetricSet& m, Metric k) {
  REQUIRE(m[k].has_value());
  return *m[k];
}

std::vector<Observation> synthetic(double separation, std::uint64_t seed, std::size_t n) {
  SynthConfig c;
  c.n_per_class = n;
  c.industry = Industry::Manufacturing;
  c.separation = separation;
  c.informative_ratios = {Ratio::RETA, Ratio::LTDTA, Ratio::PYCOGS};
  c.seed = seed;
  return make_observations(generate_dataset(c));
}

}  // namespace

TEST_CASE("confusion counts") {
  CHECK(confusion(std::vector<int>{1, 0}, std::vector<int>{1, 0}) == cm(1, 0, 0, 1));
  CHECK(confusion(std::vector<int>{1, 1, 0, 0}, std::vector<int>{0, 0, 1, 1}) == cm(0, 2, 2, 0));
  CHECK(confusion(std::vector<int>{1, 1, 1, 0}, std::vector<int>{1, 0, 1, 1}) == cm(2, 1, 1, 0));
  CHECK_THROWS_AS(confusion(std::vector<int>{1, 0}, std::vector<int>{1}), std::invalid_argument);
}

TEST_CASE("published metric identities") {
  // spec 0.5, sens 1, prec 0.6
  const auto lda = classification_metrics(cm(3, 2, 0, 2));
  CHECK(std::abs(value(lda, Metric::GMean) - 0.707) < 0.001);
  CHECK(std::abs(value(lda, Metric::FMeasure) - 0.750) < 0.001);
  // spec 0.75, sens 1, prec 0.75
  const auto qda = classification_metrics(cm(3, 1, 0, 3));
  CHECK(std::abs(value(qda, Metric::GMean) - 0.866) < 0.001);
  CHECK(std::abs(value(qda, Metric::FMeasure) - 0.857) < 0.001);
}

TEST_CASE("perfect and degenerate matrices") {
  const auto perfect = classification_metrics(cm(4, 0, 0, 6));
  for (auto m : all_metrics()) {
    if (m != Metric::Auc) CHECK(value(perfect, m) == 1.0);
  }
  CHECK_FALSE(perfect[Metric::Auc].has_value());
  std::vector<int> labels{1, 1, 1, 1, 0, 0, 0, 0, 0, 0};
  CHECK(roc_auc(labels, std::vector<double>{.9, .8, .7, .6, .1, .2, .3, .4, .5, .55}) == 1.0);

  const auto no_positives = classification_metrics(cm(0, 0, 0, 5));
  CHECK_FALSE(no_positives[Metric::Sensitivity].has_value());
  CHECK_FALSE(no_positives[Metric::Precision].has_value());
  CHECK(value(no_positives, Metric::Specificity) == 1.0);
  CHECK_FALSE(no_positives[Metric::GMean].has_value());

  const auto nothing_right = classification_metrics(cm(0, 3, 3, 0));
  CHECK(value(nothing_right, Metric::FMeasure) == 0.0);
}

TEST_CASE("auc examples") {
  const std::vector<int> labels{1, 0, 1, 0, 0};
  CHECK(roc_auc(labels, std::vector<double>(5, 0.3)) == 0.5);
  CHECK_THROWS_WITH_AS(roc_auc(std::vector<int>{1, 1}, std::vector<double>{0.2, 0.4}), "AUC undefined", DataError);

  // Hard predictions with spec 11/12 and sens 6/12.
  std::vector<int> t, pred;
  for (int i = 0; i < 12; ++i) {
    t.push_back(1);
    pred.push_back(i < 6 ? 1 : 0);
  }
  for (int i = 0; i < 12; ++i) {
    t.push_back(0);
    pred.push_back(i < 1 ? 1 : 0);
  }
  const std::vector<double> hard(pred.begin(), pred.end());
  const double auc = roc_auc(t, hard);
  CHECK(auc == doctest::Approx((6.0 / 12.0 + 11.0 / 12.0) / 2.0).epsilon(1e-15));
  CHECK(std::abs(auc - 0.708) < 0.001);
}

TEST_CASE("auc equals the pairwise rank probability") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + gen() % 199;
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    const bool coarse = trial % 2 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(gen() % 2);
      const double u = static_cast<double>(gen() % 1000000) / 1e6;
      scores[i] = coarse ? std::round(u * 8.0) / 8.0 : u;
    }
    labels[0] = 1;
    labels[1] = 0;
    CHECK(std::abs(roc_auc(labels, scores) - oracle::pairwise_auc(labels, scores)) < 1e-12);
  }
}

TEST_CASE("joint permutation leaves metrics unchanged") {
  std::mt19937_64 gen(3);
  std::vector<int> labels(40), preds(40);
  std::vector<double> scores(40);
  for (std::size_t i = 0; i < 40; ++i) {
    labels[i] = static_cast<int>(gen() % 2);
    scores[i] = static_cast<double>(gen() % 100) / 100.0;
    preds[i] = predict_label(scores[i]);
  }
  labels[0] = 1;
  labels[1] = 0;
  const auto base = classification_metrics(confusion(labels, preds));
  const double auc = roc_auc(labels, scores);
  std::vector<std::size_t> order(40);
  for (std::size_t i = 0; i < 40; ++i) order[i] = i;
  for (int k = 0; k < 5; ++k) {
    std::shuffle(order.begin(), order.end(), gen);
    std::vector<int> l2, p2;
    std::vector<double> s2;
    for (auto i : order) {
      l2.push_back(labels[i]);
      p2.push_back(preds[i]);
      s2.push_back(scores[i]);
    }
    CHECK(classification_metrics(confusion(l2, p2)) == base);
    CHECK(roc_auc(l2, s2) == auc);
  }
}

TEST_CASE("constant classifier on balanced folds") {
  // Every observation carries the same ratio values, so a tree cannot split
  // and predicts the training majority, which is a tie broken towards fraud.
  std::vector<Observation> obs;
  for (int i = 0; i < 20; ++i) {
    auto o = fixture::observation("F" + std::to_string(i), 2000, Industry::Trade, true);
    o.ratios[Ratio::RETA] = 0.1;
    obs.push_back(o);
    auto c = fixture::observation("C" + std::to_string(i), 2000, Industry::Trade, false);
    c.ratios[Ratio::RETA] = 0.1;
    obs.push_back(c);
  }
  const auto folds = stratified_folds(obs, 5, 1);
  ModelSpec spec;
  spec.family = ModelFamily::DecisionTree;
  const std::vector<Ratio> features{Ratio::RETA};
  const auto report = cross_validate(obs, folds, spec, features, Industry::Trade);
  CHECK(value(report.mean, Metric::Accuracy) == 0.5);
  const double sens = value(report.mean, Metric::Sensitivity);
  const double spec_ = value(report.mean, Metric::Specificity);
  CHECK((sens == 0.0 || spec_ == 0.0));
  CHECK(value(report.mean, Metric::Auc) == 0.5);
}

TEST_CASE("cross validation is deterministic") {
  const auto obs = synthetic(1.0, 4, 60);
  const auto folds = stratified_folds(obs, 5, 9);
  const std::vector<Ratio> features{Ratio::RETA, Ratio::LTDTA, Ratio::PYCOGS};
  for (auto family : {ModelFamily::RandomForest, ModelFamily::LogisticRegression}) {
    ModelSpec spec;
    spec.family = family;
    spec.forest.n_trees = 20;
    const auto a = evaluation_to_json(cross_validate(obs, folds, spec, features, Industry::Manufacturing)).dump();
    const auto b = evaluation_to_json(cross_validate(obs, folds, spec, features, Industry::Manufacturing)).dump();
    CHECK(a == b);
  }
}

TEST_CASE("well separated synthetic data is easy for trees") {
  const auto obs = synthetic(3.0, 21, 150);
  const auto folds = stratified_folds(obs, 5, 2);
  const std::vector<Ratio> features{Ratio::RETA, Ratio::LTDTA, Ratio::PYCOGS};

  // Oracle: nearest centroid on standardised features, same folds.
  const auto data = make_design(obs, features);
  std::vector<double> scores(obs.size());
  for (std::size_t f = 0; f < 5; ++f) {
    const auto train = select_rows(data, folds.train_indices(f));
    const auto test_idx = folds.test_indices(f);
    const auto test = select_rows(data, test_idx);
    const auto pre = Preprocessor::fit(train.x, true);
    const auto s = oracle::nearest_centroid_scores(pre.transform(train.x), train.labels, pre.transform(test.x));
    for (std::size_t i = 0; i < test_idx.size(); ++i) scores[test_idx[i]] = s[i];
  }
  CHECK(roc_auc(data.labels, scores) >= 0.95);

  for (auto family : {ModelFamily::DecisionTree, ModelFamily::BoostedTrees, ModelFamily::RandomForest}) {
    ModelSpec spec;
    spec.family = family;
    spec.boosted.rounds = 50;
    spec.forest.n_trees = 50;
    const auto r = cross_validate(obs, folds, spec, features, Industry::Manufacturing);
    CHECK_MESSAGE(value(r.mean, Metric::Auc) >= 0.95, model_label(family));
  }
}

TEST_CASE("evaluation table layout") {
  EvaluationReport r;
  r.family = ModelFamily::QDA;
  r.mean = classification_metrics(cm(3, 1, 0, 3));
  const auto table = format_evaluation_table(std::span<const EvaluationReport>(&r, 1));
  CHECK(table.find("Accuracy") < table.find("Specificity"));
  CHECK(table.find("F-Measure") < table.find("AUC"));
  CHECK(table.find("QDA") != std::string::npos);
  CHECK(table.find("0.857") != std::string::npos);
  CHECK(table.find("n/a") != std::string::npos);
  CHECK(metrics_to_json(r.mean)["auc"].is_null());
}
