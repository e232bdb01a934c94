// Acceptance suite: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraudscope/classifier.hpp"
#include "fraudscope/config.hpp"
#include "fraudscope/ensemble.hpp"
#include "fraudscope/logistic.hpp"
#include "fraudscope/metrics.hpp"
#include "fraudscope/pipeline.hpp"
#include "fraudscope/rules.hpp"
#include "fraudscope/stats.hpp"
#include "fraudscope/synth.hpp"
#include "fraudscope/tree.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "published_results.hpp"

using namespace fraudscope;
using Eigen::MatrixXd;
using Eigen::VectorXd;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and budgets.
constexpr double kPublishedRounding = 0.0005 + 1e-9;  // three printed decimals
constexpr double kPublishedTolerance = 0.001;
constexpr double kNormalApproxTolerance = 0.05;
constexpr double kGradientRelTolerance = 1e-6;
constexpr double kFiniteDifferenceStep = 1e-5;
constexpr double kSplitTolerance = 1e-12;
constexpr double kBoostInvariantTolerance = 1e-9;
constexpr double kAucTolerance = 1e-12;
constexpr double kSeparatedAucFloor = 0.90;
constexpr double kNullAucLow = 0.40;
constexpr double kNullAucHigh = 0.60;
constexpr double kHeldOutFraudFloor = 0.6;
constexpr double kBudget1 = 1.0, kBudget2 = 10.0, kBudget3 = 5.0, kBudget8 = 120.0;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const std::function<Verdict()>& body, double budget_s = 0.0) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = body();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (budget_s > 0.0 && secs >= budget_s) {
    v.pass = false;
    v.detail += " over budget";
  }
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s", secs);
  std::printf("[%s] %d %s: %s (%s)\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str(), timing);
  std::fflush(stdout);
  if (!v.pass) ++failures;
}

bool rounds_to(double value, double printed) { return std::abs(value - printed) <= kPublishedRounding; }

// Smallest confusion matrix (by total, then positives) whose metrics print
// as the published row.
std::optional<ConfusionMatrix> reconstruct(const fixture::PublishedRow& row) {
  for (std::size_t n = 2; n <= 800; ++n) {
    for (std::size_t pos = 1; pos < n; ++pos) {
      const std::size_t neg = n - pos;
      const auto tp_guess = static_cast<long>(std::lround(row.sensitivity * static_cast<double>(pos)));
      const auto tn_guess = static_cast<long>(std::lround(row.specificity * static_cast<double>(neg)));
      for (long tp = tp_guess - 1; tp <= tp_guess + 1; ++tp) {
        if (tp < 0 || tp > static_cast<long>(pos)) continue;
        if (!rounds_to(static_cast<double>(tp) / static_cast<double>(pos), row.sensitivity)) continue;
        for (long tn = tn_guess - 1; tn <= tn_guess + 1; ++tn) {
          if (tn < 0 || tn > static_cast<long>(neg)) continue;
          if (!rounds_to(static_cast<double>(tn) / static_cast<double>(neg), row.specificity)) continue;
          const ConfusionMatrix cm{static_cast<std::size_t>(tp), neg - static_cast<std::size_t>(tn),
                                   pos - static_cast<std::size_t>(tp), static_cast<std::size_t>(tn)};
          if (cm.tp + cm.fp == 0) continue;
          const double prec = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
          const double acc = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(n);
          if (rounds_to(prec, row.precision) && rounds_to(acc, row.accuracy)) return cm;
        }
      }
    }
  }
  return std::nullopt;
}

Verdict criterion_table_replay() {
  std::size_t gf_ok = 0, auc_rows = 0, auc_ok = 0;
  std::string worst;
  for (const auto& row : fixture::kPublishedResults) {
    const auto cm = reconstruct(row);
    if (!cm) {
      worst += std::string(" no matrix for ") + row.industry + "/" + row.model;
      continue;
    }
    const auto m = classification_metrics(*cm);
    const bool g = m[Metric::GMean] && std::abs(*m[Metric::GMean] - row.g_mean) <= kPublishedTolerance;
    const bool f = m[Metric::FMeasure] && std::abs(*m[Metric::FMeasure] - row.f_measure) <= kPublishedTolerance;
    if (g && f) {
      ++gf_ok;
    } else {
      worst += std::string(" G/F off for ") + row.industry + "/" + row.model;
    }
    if (std::abs(row.auc - (row.sensitivity + row.specificity) / 2.0) > kPublishedTolerance) continue;
    ++auc_rows;
    std::vector<int> labels, hard;
    auto push = [&](std::size_t count, int label, int pred) {
      for (std::size_t i = 0; i < count; ++i) {
        labels.push_back(label);
        hard.push_back(pred);
      }
    };
    push(cm->tp, 1, 1);
    push(cm->fn, 1, 0);
    push(cm->fp, 0, 1);
    push(cm->tn, 0, 0);
    const std::vector<double> scores(hard.begin(), hard.end());
    if (std::abs(roc_auc(labels, scores) - row.auc) <= kPublishedTolerance) {
      ++auc_ok;
    } else {
      worst += std::string(" AUC off for ") + row.industry + "/" + row.model;
    }
  }
  std::ostringstream d;
  d << "G-Mean/F-Measure " << gf_ok << "/" << fixture::kPublishedResults.size() << " within "
    << kPublishedTolerance << ", hard-label AUC " << auc_ok << "/" << auc_rows << worst;
  return {gf_ok == fixture::kPublishedResults.size() && auc_ok == auc_rows && auc_rows > 0, d.str()};
}

Verdict criterion_mann_whitney() {
  std::mt19937_64 gen(2024);
  std::size_t exact_ok = 0, normal_ok = 0, normal_total = 0;
  double worst_normal = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const bool ties = trial % 2 == 0;
    const std::size_t total = 2 + gen() % 11;
    const std::size_t n1 = 1 + gen() % (total - 1);
    std::vector<double> a(n1), b(total - n1);
    auto draw = [&] { return ties ? static_cast<double>(gen() % 4) : static_cast<double>(gen() % 1000000) / 7.0; };
    for (auto& v : a) v = draw();
    for (auto& v : b) v = draw();
    const auto r = mann_whitney(a, b);
    if (r.exact && r.p_value == oracle::mann_whitney_exact_p(a, b)) ++exact_ok;
  }
  for (std::size_t n1 = 6; n1 <= 8; ++n1) {
    for (std::size_t n2 = 6; n2 <= 8; ++n2) {
      for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> pool(n1 + n2);
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<double>(i);
        std::shuffle(pool.begin(), pool.end(), gen);
        const std::vector<double> a(pool.begin(), pool.begin() + static_cast<long>(n1));
        const std::vector<double> b(pool.begin() + static_cast<long>(n1), pool.end());
        const double diff = std::abs(mann_whitney_normal_p(a, b) - oracle::mann_whitney_exact_p(a, b));
        worst_normal = std::max(worst_normal, diff);
        ++normal_total;
        if (diff <= kNormalApproxTolerance) ++normal_ok;
      }
    }
  }
  std::ostringstream d;
  d << "exact " << exact_ok << "/200 identical to enumeration, normal approximation " << normal_ok << "/"
    << normal_total << " within " << kNormalApproxTolerance << " (worst " << worst_normal << ")";
  return {exact_ok == 200 && normal_ok == normal_total, d.str()};
}

Verdict criterion_kendall() {
  std::mt19937_64 gen(77);
  std::size_t ok = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + gen() % 29;
    const bool ties = trial % 3 == 0;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = ties ? static_cast<double>(gen() % 5) : static_cast<double>(gen() % 100000);
      y[i] = ties ? static_cast<double>(gen() % 5) : static_cast<double>(gen() % 100000);
    }
    if (kendall_tau_a(x, y) == oracle::kendall_tau_a(x, y)) ++ok;
  }
  return {ok == 500, std::to_string(ok) + "/500 identical to pair enumeration"};
}

Verdict criterion_gradient() {
  double worst = 0.0;
  std::size_t checks = 0;
  for (std::uint64_t fixture_seed : {1, 2, 3}) {
    const auto d = fixture::random_labelled(fixture_seed, 40 + 20 * fixture_seed, 2 + fixture_seed, 0.7);
    const MatrixXd xa = with_intercept(d.x);
    std::mt19937_64 gen(fixture_seed * 101);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      VectorXd w(xa.cols());
      for (Eigen::Index j = 0; j < w.size(); ++j) w(j) = normal(gen);
      const VectorXd g = cross_entropy_gradient(w, xa, d.labels);
      const VectorXd fd = oracle::central_difference(
          [&](const VectorXd& v) { return oracle::cross_entropy(v, xa, d.labels); }, w, kFiniteDifferenceStep);
      worst = std::max(worst, (g - fd).norm() / fd.norm());
      ++checks;
    }
  }
  std::ostringstream d;
  d << checks << " weight vectors, worst relative error " << worst << " (limit " << kGradientRelTolerance << ")";
  return {worst < kGradientRelTolerance, d.str()};
}

Verdict criterion_cart() {
  std::size_t ok = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 4 + seed % 47;
    const std::size_t p = 1 + seed % 4;
    const auto d = fixture::random_labelled(seed + 500, n, p, 0.6, false, seed % 2 == 1);
    const auto tree = fit_cart(d.x, d.labels);
    const auto splits = oracle::all_splits(d.x, d.labels);
    double best = oracle::node_gini(static_cast<int>(std::count(d.labels.begin(), d.labels.end(), 1)),
                                    static_cast<int>(n));
    for (const auto& s : splits) best = std::min(best, s.gini);
    const auto& root = tree.nodes[0];
    const double chosen = root.is_leaf() ? oracle::node_gini(static_cast<int>(std::count(d.labels.begin(), d.labels.end(), 1)),
                                                             static_cast<int>(n))
                                         : oracle::split_gini(d.x, d.labels, root.feature, root.threshold);
    worst = std::max(worst, chosen - best);
    if (chosen <= best + kSplitTolerance) ++ok;
  }
  std::ostringstream d;
  d << ok << "/50 roots at the enumerated minimum (worst excess " << worst << ")";
  return {ok == 50, d.str()};
}

Verdict criterion_degeneracy() {
  std::size_t rf_ok = 0, bt_ok = 0, rounds = 0, rounds_ok = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto d = fixture::random_labelled(seed + 900, 30 + 4 * seed, 1 + seed % 4, 0.8, true, seed % 3 == 0);
    const auto cart = fit_cart(d.x, d.labels);
    RandomForestOptions rf;
    rf.n_trees = 1;
    rf.features_per_split = static_cast<std::size_t>(d.x.cols());
    rf.bootstrap = false;
    rf.seed = seed;
    const auto forest = fit_random_forest(d.x, d.labels, rf);
    const auto bt = fit_boosted_trees(d.x, d.labels, {1, 1.0, 5, 1});
    // Training rows plus perturbed probes.
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> jitter(0.0, 0.5);
    bool rf_same = true, bt_same = true;
    for (Eigen::Index i = 0; i < d.x.rows(); ++i) {
      for (int probe = 0; probe < 3; ++probe) {
        VectorXd x = d.x.row(i).transpose();
        if (probe > 0) {
          for (Eigen::Index j = 0; j < x.size(); ++j) x(j) += jitter(gen);
        }
        const int want = predict_label(cart.predict(x));
        rf_same = rf_same && predict_label(forest.score(x)) == want;
        bt_same = bt_same && predict_label(bt.score(x)) == want;
      }
    }
    rf_ok += rf_same ? 1 : 0;
    bt_ok += bt_same ? 1 : 0;

    const auto ab = fit_adaboost(d.x, d.labels, {50});
    for (const auto& r : ab.trace) {
      ++rounds;
      if (std::abs(r.error_after - 0.5) <= kBoostInvariantTolerance) ++rounds_ok;
    }
  }
  std::ostringstream d;
  d << "forest " << rf_ok << "/10, boosted trees " << bt_ok << "/10 match CART; AdaBoost " << rounds_ok << "/"
    << rounds << " rounds at error 0.5";
  return {rf_ok == 10 && bt_ok == 10 && rounds_ok == rounds && rounds > 0, d.str()};
}

Verdict criterion_auc() {
  std::mt19937_64 gen(31);
  std::size_t ok = 0;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + gen() % 199;
    std::vector<int> labels(n);
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
      labels[i] = static_cast<int>(gen() % 2);
      const double u = static_cast<double>(gen() % 1000000) / 1e6;
      scores[i] = trial % 2 == 0 ? std::round(u * 10.0) / 10.0 : u;
    }
    labels[0] = 1;
    labels[1] = 0;
    const double diff = std::abs(roc_auc(labels, scores) - oracle::pairwise_auc(labels, scores));
    worst = std::max(worst, diff);
    if (diff <= kAucTolerance) ++ok;
  }
  std::ostringstream d;
  d << ok << "/100 within " << kAucTolerance << " of the pairwise probability (worst " << worst << ")";
  return {ok == 100, d.str()};
}

// synth -> CSV -> run_pipeline, as the command line does.
PipelineResult synth_and_run(const fs::path& dir, const SynthConfig& synth, const PipelineConfig& base) {
  fs::create_directories(dir);
  std::ostringstream csv;
  write_statements(csv, generate_dataset(synth));
  write_file((dir / "statements.csv").string(), csv.str());
  auto config = base;
  config.input = (dir / "statements.csv").string();
  config.output_dir = (dir / "out").string();
  return run_pipeline(config);
}

std::vector<double> mean_aucs(const fs::path& out, Industry industry) {
  const auto doc = nlohmann::json::parse(read_file((out / industry_slug(industry) / "evaluation.json").string()));
  std::vector<double> aucs;
  for (const auto& e : doc) aucs.push_back(e["mean"]["auc"].is_null() ? -1.0 : e["mean"]["auc"].get<double>());
  return aucs;
}

Verdict criterion_end_to_end() {
  const auto root = fixture::temp_dir("acceptance-e2e");
  const std::vector<Ratio> informative{Ratio::RETA, Ratio::LTDTA, Ratio::PYCOGS};
  SynthConfig synth;
  synth.n_per_class = 400;
  synth.industry = Industry::Manufacturing;
  synth.separation = 3.0;
  synth.informative_ratios = informative;
  synth.seed = 7;
  PipelineConfig config;  // computed selection, every model
  std::ostringstream d;
  bool pass = true;

  const auto strong = synth_and_run(root / "sep3", synth, config);
  if (strong.succeeded() != 1) return {false, "separated run failed: " + strong.industries.at(0).detail};
  const auto aucs = mean_aucs(root / "sep3" / "out", synth.industry);
  const auto high = std::count_if(aucs.begin(), aucs.end(), [](double a) { return a >= kSeparatedAucFloor; });
  d << "sep 3: " << high << "/7 models AUC >= " << kSeparatedAucFloor;
  pass = pass && high >= 3;

  const auto sel = nlohmann::json::parse(
      read_file((root / "sep3" / "out" / industry_slug(synth.industry) / "selection.json").string()));
  std::size_t recovered = 0;
  for (auto r : informative) {
    for (const auto& s : sel["selected"]) recovered += s == ratio_name(r) ? 1 : 0;
  }
  d << ", informative ratios selected " << recovered << "/" << informative.size();
  pass = pass && recovered == informative.size();

  // Replay the rules on data the tree never saw.
  const auto rules = rules_from_json(nlohmann::json::parse(
      read_file((root / "sep3" / "out" / industry_slug(synth.industry) / "rules.json").string())));
  const auto tree = TrainedModel::from_json(nlohmann::json::parse(
      read_file((root / "sep3" / "out" / industry_slug(synth.industry) / "tree.json").string())));
  auto held_out_cfg = synth;
  held_out_cfg.seed = 8;
  const auto held_out = make_observations(generate_dataset(held_out_cfg));
  double best = 0.0;
  for (const auto& rule : rules) {
    std::size_t matched = 0, fraud = 0;
    for (const auto& o : held_out) {
      std::vector<double> x;
      for (const auto& name : tree.feature_names()) {
        const auto v = o.ratios[*ratio_from_name(name)];
        x.push_back(v ? *v : std::nan(""));
      }
      if (!rule.matches(x)) continue;
      ++matched;
      fraud += o.fraud ? 1 : 0;
    }
    if (matched > 0) best = std::max(best, static_cast<double>(fraud) / static_cast<double>(matched));
  }
  d << ", " << rules.size() << " rules, best held-out fraud fraction " << best;
  pass = pass && !rules.empty() && best >= kHeldOutFraudFloor;

  auto null_synth = synth;
  null_synth.separation = 0.0;
  null_synth.informative_ratios.clear();
  const auto weak = synth_and_run(root / "sep0", null_synth, config);
  if (weak.succeeded() != 1) return {false, d.str() + "; null run failed: " + weak.industries.at(0).detail};
  const auto null_aucs = mean_aucs(root / "sep0" / "out", synth.industry);
  const auto lo = *std::min_element(null_aucs.begin(), null_aucs.end());
  const auto hi = *std::max_element(null_aucs.begin(), null_aucs.end());
  d << "; sep 0: AUC range [" << lo << ", " << hi << "]";
  pass = pass && lo >= kNullAucLow && hi <= kNullAucHigh;
  return {pass, d.str()};
}

Verdict criterion_determinism() {
  const auto root = fixture::temp_dir("acceptance-determinism");
  SynthConfig synth;
  synth.n_per_class = 120;
  synth.industry = Industry::Services;
  synth.separation = 1.5;
  synth.informative_ratios = {Ratio::RETA, Ratio::IVTA};
  synth.seed = 11;
  PipelineConfig config;
  config.forest.n_trees = 50;
  // Same config, paths included: run, snapshot, run again in place.
  synth_and_run(root / "run", synth, config);
  fs::copy(root / "run" / "out", root / "first", fs::copy_options::recursive);
  synth_and_run(root / "run", synth, config);
  const auto second = root / "run" / "out";
  const bool manifests =
      read_file((root / "first" / "manifest.json").string()) == read_file((second / "manifest.json").string());
  std::size_t same = 0, total = 0, reports = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "first")) {
    if (!entry.is_regular_file()) continue;
    const auto rel = fs::relative(entry.path(), root / "first");
    ++total;
    reports += rel.filename() == "report.md" ? 1 : 0;
    same += read_file(entry.path().string()) == read_file((second / rel).string()) ? 1 : 0;
  }
  std::ostringstream d;
  d << "manifests " << (manifests ? "identical" : "differ") << ", " << same << "/" << total
    << " artifacts byte-identical including " << reports << " report";
  return {manifests && same == total && reports > 0, d.str()};
}

}  // namespace

int main() {
  report(1, "published metric identities", criterion_table_replay, kBudget1);
  report(2, "Mann-Whitney exact oracle", criterion_mann_whitney, kBudget2);
  report(3, "Kendall tau-a oracle", criterion_kendall, kBudget3);
  report(4, "logistic gradient check", criterion_gradient);
  report(5, "CART root optimality", criterion_cart);
  report(6, "ensemble degeneracy", criterion_degeneracy);
  report(7, "AUC rank equivalence", criterion_auc);
  report(8, "end-to-end synthetic", criterion_end_to_end, kBudget8);
  report(9, "determinism", criterion_determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
