#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fraudscope/classifier.hpp"
#include "fraudscope/industry.hpp"
#include "fraudscope/rules.hpp"
#include "fraudscope/stats.hpp"

namespace fraudscope {

enum class SelectionMode { Computed, Table7Preset };

/// Pipeline settings. The file format is one `key = value` per line with `#`
/// comments; every key is optional and defaults to the value below.
struct PipelineConfig {
  std::string input;
  std::string output_dir = "fraudscope-out";
  std::uint64_t seed = 20240601;
  int first_year = 1990;
  int last_year = 2012;
  double alpha = 0.05;
  double tau_cap = 0.65;
  SelectionMode selection = SelectionMode::Computed;
  bool selection_in_folds = false;
  std::size_t folds = 10;
  bool keep_unmatched = false;
  bool hard_auc = false;
  double threshold = kDefaultThreshold;
  std::vector<ModelFamily> models{all_model_families().begin(), all_model_families().end()};
  LogregOptions logreg;
  TreeOptions tree;
  AdaBoostOptions adaboost;
  BoostedTreesOptions boosted;
  RandomForestOptions forest;  // seed is ignored; forests derive theirs from `seed`
  double ridge_scale = 1e-6;
  RuleOptions rules;
  std::vector<Industry> industries;  // empty = every industry present in the input

  /// Throws UsageError for an unknown key or unparsable value.
  void set(std::string_view key, std::string_view value);

  /// Canonical text listing every key, in a fixed order.
  std::string to_text() const;
  /// FNV-1a of the canonical text without the path keys, as 16 hex digits.
  std::string hash() const;

  SelectionOptions selection_options() const { return {alpha, tau_cap}; }
  ModelSpec model_spec(ModelFamily family) const;

  bool operator==(const PipelineConfig&) const;
};

PipelineConfig parse_config(std::istream& in);
PipelineConfig load_config(const std::string& path);

std::string_view selection_mode_name(SelectionMode mode);

}  // namespace fraudscope
