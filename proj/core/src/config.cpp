#include "fraudscope/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fraudscope/csv.hpp"
#include "fraudscope/error.hpp"
#include "fraudscope/random.hpp"

namespace fraudscope {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto item = trim(value.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw UsageError("config: invalid value '" + std::string(value) + "' for " + std::string(key));
}

double as_double(std::string_view key, std::string_view value) {
  const auto v = csv::parse_double(value);
  if (!v) bad_value(key, value);
  return *v;
}

double as_probability(std::string_view key, std::string_view value) {
  const double v = as_double(key, value);
  if (!(v > 0.0 && v <= 1.0)) bad_value(key, value);
  return v;
}

double as_positive(std::string_view key, std::string_view value) {
  const double v = as_double(key, value);
  if (!(v > 0.0)) bad_value(key, value);
  return v;
}

long long as_integer(std::string_view key, std::string_view value, long long min) {
  const auto v = csv::parse_integer(value);
  if (!v || *v < min) bad_value(key, value);
  return *v;
}

std::size_t as_count(std::string_view key, std::string_view value, long long min) {
  return static_cast<std::size_t>(as_integer(key, value, min));
}

bool as_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value);
}

std::string fmt(double v) { return csv::format_double(v); }
std::string fmt(bool v) { return v ? "true" : "false"; }

}  // namespace

std::string_view selection_mode_name(SelectionMode mode) {
  return mode == SelectionMode::Computed ? "computed" : "table7_preset";
}

void PipelineConfig::set(std::string_view key, std::string_view raw) {
  const auto value = trim(raw);
  if (key == "input") {
    input = value;
  } else if (key == "output_dir") {
    output_dir = value;
  } else if (key == "seed") {
    const auto v = csv::parse_integer(value);
    if (!v || *v < 0) bad_value(key, value);
    seed = static_cast<std::uint64_t>(*v);
  } else if (key == "first_year") {
    first_year = static_cast<int>(as_integer(key, value, 0));
  } else if (key == "last_year") {
    last_year = static_cast<int>(as_integer(key, value, 0));
  } else if (key == "alpha") {
    alpha = as_probability(key, value);
  } else if (key == "tau_cap") {
    tau_cap = as_probability(key, value);
  } else if (key == "selection") {
    if (value == "computed") selection = SelectionMode::Computed;
    else if (value == "table7_preset") selection = SelectionMode::Table7Preset;
    else bad_value(key, value);
  } else if (key == "selection_in_folds") {
    selection_in_folds = as_bool(key, value);
  } else if (key == "folds") {
    folds = as_count(key, value, 2);
  } else if (key == "keep_unmatched") {
    keep_unmatched = as_bool(key, value);
  } else if (key == "hard_auc") {
    hard_auc = as_bool(key, value);
  } else if (key == "threshold") {
    threshold = as_probability(key, value);
  } else if (key == "models") {
    models.clear();
    for (auto tag : split_list(value)) {
      const auto family = model_from_tag(tag);
      if (!family) bad_value(key, value);
      for (auto m : models) {
        if (m == *family) bad_value(key, value);
      }
      models.push_back(*family);
    }
    if (models.empty()) bad_value(key, value);
  } else if (key == "lr.learning_rate") {
    logreg.learning_rate = as_positive(key, value);
  } else if (key == "lr.max_iters") {
    logreg.max_iters = as_count(key, value, 1);
  } else if (key == "lr.tol") {
    logreg.tol = as_positive(key, value);
  } else if (key == "dt.max_depth") {
    tree.max_depth = as_count(key, value, 1);
  } else if (key == "dt.min_leaf") {
    tree.min_leaf = as_count(key, value, 1);
  } else if (key == "ab.rounds") {
    adaboost.rounds = as_count(key, value, 1);
  } else if (key == "bt.rounds") {
    boosted.rounds = as_count(key, value, 1);
  } else if (key == "bt.shrinkage") {
    boosted.shrinkage = as_probability(key, value);
  } else if (key == "bt.max_depth") {
    boosted.max_depth = as_count(key, value, 1);
  } else if (key == "bt.min_leaf") {
    boosted.min_leaf = as_count(key, value, 1);
  } else if (key == "rf.n_trees") {
    forest.n_trees = as_count(key, value, 1);
  } else if (key == "rf.features_per_split") {
    forest.features_per_split = as_count(key, value, 0);
  } else if (key == "rf.max_depth") {
    forest.max_depth = as_count(key, value, 1);
  } else if (key == "rf.min_leaf") {
    forest.min_leaf = as_count(key, value, 1);
  } else if (key == "rf.bootstrap") {
    forest.bootstrap = as_bool(key, value);
  } else if (key == "da.ridge") {
    const double v = as_double(key, value);
    if (!(v >= 0.0)) bad_value(key, value);
    ridge_scale = v;
  } else if (key == "rules.min_fraud_fraction") {
    const double v = as_double(key, value);
    if (!(v >= 0.0 && v <= 1.0)) bad_value(key, value);
    rules.min_fraud_fraction = v;
  } else if (key == "rules.min_support") {
    rules.min_support = as_count(key, value, 1);
  } else if (key == "industries") {
    industries.clear();
    if (value != "all") {
      for (auto slug : split_list(value)) {
        const auto industry = industry_from_slug(slug);
        if (!industry) bad_value(key, value);
        industries.push_back(*industry);
      }
    }
  } else {
    throw UsageError("config: unknown key '" + std::string(key) + "'");
  }
}

namespace {

// Everything except input and output_dir, in canonical order.
std::string semantic_text(const PipelineConfig& c) {
  std::ostringstream out;
  out << "seed = " << c.seed << '\n'
      << "first_year = " << c.first_year << '\n'
      << "last_year = " << c.last_year << '\n'
      << "alpha = " << fmt(c.alpha) << '\n'
      << "tau_cap = " << fmt(c.tau_cap) << '\n'
      << "selection = " << selection_mode_name(c.selection) << '\n'
      << "selection_in_folds = " << fmt(c.selection_in_folds) << '\n'
      << "folds = " << c.folds << '\n'
      << "keep_unmatched = " << fmt(c.keep_unmatched) << '\n'
      << "hard_auc = " << fmt(c.hard_auc) << '\n'
      << "threshold = " << fmt(c.threshold) << '\n'
      << "models = ";
  for (std::size_t i = 0; i < c.models.size(); ++i) out << (i ? "," : "") << model_tag(c.models[i]);
  out << '\n'
      << "lr.learning_rate = " << fmt(c.logreg.learning_rate) << '\n'
      << "lr.max_iters = " << c.logreg.max_iters << '\n'
      << "lr.tol = " << fmt(c.logreg.tol) << '\n'
      << "dt.max_depth = " << c.tree.max_depth << '\n'
      << "dt.min_leaf = " << c.tree.min_leaf << '\n'
      << "ab.rounds = " << c.adaboost.rounds << '\n'
      << "bt.rounds = " << c.boosted.rounds << '\n'
      << "bt.shrinkage = " << fmt(c.boosted.shrinkage) << '\n'
      << "bt.max_depth = " << c.boosted.max_depth << '\n'
      << "bt.min_leaf = " << c.boosted.min_leaf << '\n'
      << "rf.n_trees = " << c.forest.n_trees << '\n'
      << "rf.features_per_split = " << c.forest.features_per_split << '\n'
      << "rf.max_depth = " << c.forest.max_depth << '\n'
      << "rf.min_leaf = " << c.forest.min_leaf << '\n'
      << "rf.bootstrap = " << fmt(c.forest.bootstrap) << '\n'
      << "da.ridge = " << fmt(c.ridge_scale) << '\n'
      << "rules.min_fraud_fraction = " << fmt(c.rules.min_fraud_fraction) << '\n'
      << "rules.min_support = " << c.rules.min_support << '\n'
      << "industries = ";
  if (c.industries.empty()) out << "all";
  for (std::size_t i = 0; i < c.industries.size(); ++i) out << (i ? "," : "") << industry_slug(c.industries[i]);
  out << '\n';
  return out.str();
}

}  // namespace

std::string PipelineConfig::to_text() const {
  return "input = " + input + "\noutput_dir = " + output_dir + "\n" + semantic_text(*this);
}

std::string PipelineConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(semantic_text(*this))));
  return buf;
}

bool PipelineConfig::operator==(const PipelineConfig& other) const { return to_text() == other.to_text(); }

ModelSpec PipelineConfig::model_spec(ModelFamily family) const {
  ModelSpec spec;
  spec.family = family;
  spec.threshold = threshold;
  spec.ridge_scale = ridge_scale;
  spec.logreg = logreg;
  spec.tree = tree;
  spec.adaboost = adaboost;
  spec.boosted = boosted;
  spec.forest = forest;
  spec.forest.seed = derive_seed(seed, "forest");
  return spec;
}

PipelineConfig parse_config(std::istream& in) {
  PipelineConfig config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config: line " + std::to_string(number) + ": expected key = value");
    }
    config.set(trim(view.substr(0, eq)), view.substr(eq + 1));
  }
  if (config.first_year > config.last_year) throw UsageError("config: first_year after last_year");
  return config;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path + "'");
  return parse_config(in);
}

}  // namespace fraudscope
