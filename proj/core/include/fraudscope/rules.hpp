#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fraudscope/industry.hpp"
#include "fraudscope/metrics.hpp"
#include "fraudscope/stats.hpp"
#include "fraudscope/tree.hpp"

namespace fraudscope {

enum class Comparator { Greater, LessEqual };

struct Condition {
  std::size_t feature = 0;  // column in the tree's design
  std::string ratio;
  Comparator comparator = Comparator::Greater;
  double threshold = 0.0;

  bool holds(std::span<const double> x) const;
  bool operator==(const Condition&) const = default;
};

struct RedFlagRule {
  Industry industry = Industry::Agriculture;
  std::vector<Condition> conditions;
  double fraud_fraction = 0.0;
  std::size_t support = 0;
  std::size_t leaf = 0;  // node index in the source tree

  bool matches(std::span<const double> x) const;
  bool operator==(const RedFlagRule&) const = default;
};

struct RuleOptions {
  double min_fraud_fraction = 0.6;
  std::size_t min_support = 5;
};

/// One rule per leaf meeting both floors. Conditions on a feature collapse to
/// its tightest bounds, kept in order of first appearance on the path. Rules
/// are ordered by fraud fraction, then support, then left-to-right leaf order.
std::vector<RedFlagRule> extract_rules(const Tree& tree, std::span<const std::string> feature_names,
                                       Industry industry, const RuleOptions& options = {});

/// "IVTA > 0.0118"
std::string format_condition(const Condition& condition);
/// Threshold to three significant digits.
std::string display_threshold(double value);

nlohmann::json rules_to_json(std::span<const RedFlagRule> rules);
std::vector<RedFlagRule> rules_from_json(const nlohmann::json& doc);

/// Markdown with Selection, Leaderboard and Red-Flags sections. Throws
/// std::invalid_argument when an input belongs to another industry.
std::string render_report(Industry industry, std::span<const RedFlagRule> rules,
                          const FeatureSelection& selection, std::span<const EvaluationReport> evaluations);

}  // namespace fraudscope
