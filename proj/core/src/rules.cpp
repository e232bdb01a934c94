#include "fraudscope/rules.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fraudscope/csv.hpp"
#include "fraudscope/error.hpp"

namespace fraudscope {

using nlohmann::json;

namespace {

struct Bounds {
  std::size_t feature;
  std::optional<double> lower;  // x > lower
  std::optional<double> upper;  // x <= upper
};

std::vector<Condition> merge_path(const std::vector<Condition>& path) {
  std::vector<Bounds> bounds;
  for (const auto& c : path) {
    auto it = std::find_if(bounds.begin(), bounds.end(), [&](const Bounds& b) { return b.feature == c.feature; });
    if (it == bounds.end()) {
      bounds.push_back({c.feature, std::nullopt, std::nullopt});
      it = std::prev(bounds.end());
    }
    if (c.comparator == Comparator::Greater) {
      it->lower = it->lower ? std::max(*it->lower, c.threshold) : c.threshold;
    } else {
      it->upper = it->upper ? std::min(*it->upper, c.threshold) : c.threshold;
    }
  }
  std::vector<Condition> merged;
  for (const auto& b : bounds) {
    const auto& name = std::find_if(path.begin(), path.end(), [&](const Condition& c) {
                         return c.feature == b.feature;
                       })->ratio;
    if (b.lower) merged.push_back({b.feature, name, Comparator::Greater, *b.lower});
    if (b.upper) merged.push_back({b.feature, name, Comparator::LessEqual, *b.upper});
  }
  return merged;
}

std::string fixed(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

const char* comparator_symbol(Comparator c) { return c == Comparator::Greater ? ">" : "≤"; }

}  // namespace

bool Condition::holds(std::span<const double> x) const {
  if (feature >= x.size()) throw std::invalid_argument("rule: feature index out of range");
  return comparator == Comparator::Greater ? x[feature] > threshold : x[feature] <= threshold;
}

bool RedFlagRule::matches(std::span<const double> x) const {
  return std::all_of(conditions.begin(), conditions.end(), [&](const Condition& c) { return c.holds(x); });
}

std::vector<RedFlagRule> extract_rules(const Tree& tree, std::span<const std::string> feature_names,
                                       Industry industry, const RuleOptions& options) {
  if (feature_names.size() != tree.n_features) {
    throw std::invalid_argument("extract_rules: feature names do not match the tree");
  }
  std::vector<RedFlagRule> rules;
  std::vector<Condition> path;
  // depth-first, left subtree first, gives the path order used for ties
  auto visit = [&](auto&& self, std::size_t index) -> void {
    const auto& node = tree.nodes[index];
    if (node.is_leaf()) {
      if (path.empty()) return;
      if (node.value >= options.min_fraud_fraction && node.count >= options.min_support) {
        rules.push_back({industry, merge_path(path), node.value, node.count, index});
      }
      return;
    }
    const auto f = static_cast<std::size_t>(node.feature);
    path.push_back({f, feature_names[f], Comparator::LessEqual, node.threshold});
    self(self, static_cast<std::size_t>(node.left));
    path.back().comparator = Comparator::Greater;
    self(self, static_cast<std::size_t>(node.right));
    path.pop_back();
  };
  visit(visit, 0);
  std::stable_sort(rules.begin(), rules.end(), [](const RedFlagRule& a, const RedFlagRule& b) {
    if (a.fraud_fraction != b.fraud_fraction) return a.fraud_fraction > b.fraud_fraction;
    return a.support > b.support;
  });
  return rules;
}

std::string display_threshold(double value) { return fixed(value, "%.3g"); }

std::string format_condition(const Condition& c) {
  return c.ratio + " " + comparator_symbol(c.comparator) + " " + display_threshold(c.threshold);
}

json rules_to_json(std::span<const RedFlagRule> rules) {
  json out = json::array();
  for (const auto& r : rules) {
    json conditions = json::array();
    for (const auto& c : r.conditions) {
      conditions.push_back({{"feature", c.feature},
                            {"ratio", c.ratio},
                            {"comparator", c.comparator == Comparator::Greater ? ">" : "<="},
                            {"threshold", c.threshold},
                            {"display", display_threshold(c.threshold)}});
    }
    out.push_back({{"industry", std::string(industry_slug(r.industry))},
                   {"conditions", conditions},
                   {"fraud_fraction", r.fraud_fraction},
                   {"support", r.support},
                   {"leaf", r.leaf}});
  }
  return out;
}

std::vector<RedFlagRule> rules_from_json(const json& doc) {
  std::vector<RedFlagRule> rules;
  try {
    for (const auto& r : doc) {
      RedFlagRule rule;
      const auto industry = industry_from_slug(r.at("industry").get<std::string>());
      if (!industry) throw DataError("rules: unknown industry");
      rule.industry = *industry;
      for (const auto& c : r.at("conditions")) {
        Condition cond;
        cond.feature = c.at("feature").get<std::size_t>();
        cond.ratio = c.at("ratio").get<std::string>();
        const auto cmp = c.at("comparator").get<std::string>();
        if (cmp == ">") cond.comparator = Comparator::Greater;
        else if (cmp == "<=") cond.comparator = Comparator::LessEqual;
        else throw DataError("rules: unknown comparator " + cmp);
        cond.threshold = c.at("threshold").get<double>();
        rule.conditions.push_back(std::move(cond));
      }
      rule.fraud_fraction = r.at("fraud_fraction").get<double>();
      rule.support = r.at("support").get<std::size_t>();
      rule.leaf = r.at("leaf").get<std::size_t>();
      rules.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("rules: malformed document: ") + e.what());
  }
  return rules;
}

std::string render_report(Industry industry, std::span<const RedFlagRule> rules,
                          const FeatureSelection& selection, std::span<const EvaluationReport> evaluations) {
  if (selection.industry != industry) throw std::invalid_argument("render_report: selection is for another industry");
  for (const auto& e : evaluations) {
    if (e.industry != industry) throw std::invalid_argument("render_report: evaluation is for another industry");
  }
  for (const auto& r : rules) {
    if (r.industry != industry) throw std::invalid_argument("render_report: rule is for another industry");
  }

  std::ostringstream out;
  out << "# Red-flag report: " << industry_label(industry) << "\n\n";

  out << "## Selection\n\n";
  out << "Provenance: " << provenance_name(selection.provenance);
  if (selection.fallback) out << " (no ratio reached the significance level; kept the smallest p-value)";
  out << "\n\n";
  out << "| Ratio | Direction | U | p-value |\n|---|---|---|---|\n";
  for (auto ratio : selection.selected) {
    out << "| " << ratio_name(ratio) << " | ";
    const auto test = std::find_if(selection.tests.begin(), selection.tests.end(),
                                   [&](const RatioTest& t) { return t.ratio == ratio; });
    if (test != selection.tests.end() && test->result) {
      out << direction_symbol(test->result->direction) << " | " << fixed(test->result->u_statistic, "%.1f")
          << " | " << fixed(test->result->p_value, "%.3g") << " |\n";
    } else {
      out << direction_symbol(published_sign(industry, ratio)) << " | | |\n";
    }
  }
  if (!selection.pruned.empty()) {
    out << "\nPruned for correlation:\n\n";
    for (const auto& p : selection.pruned) {
      out << "- " << ratio_name(p.dropped) << " (tau " << fixed(p.tau, "%.3f") << " with "
          << ratio_name(p.kept) << ")\n";
    }
  }

  out << "\n## Leaderboard\n\n";
  std::vector<const EvaluationReport*> board;
  for (const auto& e : evaluations) board.push_back(&e);
  std::stable_sort(board.begin(), board.end(), [](const EvaluationReport* a, const EvaluationReport* b) {
    const auto& x = a->mean[Metric::Auc];
    const auto& y = b->mean[Metric::Auc];
    if (x.has_value() != y.has_value()) return x.has_value();
    return x && *x > *y;
  });
  out << "| Model |";
  for (auto m : all_metrics()) out << ' ' << metric_label(m) << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < kMetricCount; ++i) out << "---|";
  out << '\n';
  for (const auto* e : board) {
    out << "| " << model_label(e->family) << " |";
    for (auto m : all_metrics()) {
      const auto& v = e->mean[m];
      out << ' ' << (v ? fixed(*v, "%.3f") : std::string("n/a")) << " |";
    }
    out << '\n';
  }

  out << "\n## Red-Flags\n\n";
  if (rules.empty()) {
    out << "no red-flags met the emission floor\n";
  } else {
    for (const auto& r : rules) {
      out << "- ";
      for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        if (i > 0) out << " and ";
        out << format_condition(r.conditions[i]);
      }
      out << " ⇒ fraud-risk (fraud fraction " << fixed(r.fraud_fraction, "%.3f") << ", support " << r.support
          << ")\n";
      out << "  - exact thresholds: ";
      for (std::size_t i = 0; i < r.conditions.size(); ++i) {
        const auto& c = r.conditions[i];
        if (i > 0) out << "; ";
        out << c.ratio << ' ' << comparator_symbol(c.comparator) << ' ' << csv::format_double(c.threshold);
      }
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace fraudscope
