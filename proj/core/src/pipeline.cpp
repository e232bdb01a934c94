#include "fraudscope/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fraudscope/csv.hpp"
#include "fraudscope/design.hpp"
#include "fraudscope/error.hpp"
#include "fraudscope/ingest.hpp"
#include "fraudscope/random.hpp"

namespace fraudscope {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestFormat = "fraudscope-manifest";

template <typename F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const DataError& e) {
    throw DataError(std::string(name) + ": " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json test_json(const RatioTest& t) {
  json j = {{"ratio", std::string(ratio_name(t.ratio))}};
  if (!t.result) {
    j["result"] = nullptr;
    return j;
  }
  const auto& r = *t.result;
  j["result"] = {{"u", r.u_statistic},       {"z", r.z_score},
                 {"p", r.p_value},           {"direction", std::string(1, direction_symbol(r.direction))},
                 {"n_fraud", r.n_fraud},     {"n_nonfraud", r.n_nonfraud},
                 {"exact", r.exact}};
  return j;
}

}  // namespace

std::size_t PipelineResult::succeeded() const {
  std::size_t n = 0;
  for (const auto& i : industries) n += i.status == "ok" ? 1 : 0;
  return n;
}

std::string hash_hex(std::string_view bytes) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  const fs::path p(path);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw DataError("cannot write '" + path + "'");
}

json selection_to_json(const FeatureSelection& s, const SelectionOptions& options) {
  json selected = json::array();
  for (auto r : s.selected) selected.push_back(std::string(ratio_name(r)));
  json tests = json::array();
  for (const auto& t : s.tests) tests.push_back(test_json(t));
  json pruned = json::array();
  for (const auto& p : s.pruned) {
    pruned.push_back({{"dropped", std::string(ratio_name(p.dropped))},
                      {"kept", std::string(ratio_name(p.kept))},
                      {"tau", p.tau}});
  }
  return {{"industry", std::string(industry_slug(s.industry))},
          {"provenance", provenance_name(s.provenance)},
          {"alpha", options.alpha},
          {"tau_cap", options.tau_cap},
          {"fallback", s.fallback},
          {"selected", selected},
          {"tests", tests},
          {"pruned", pruned}};
}

IndustryRun analyze_industry(std::span<const Observation> observations, Industry industry,
                             const PipelineConfig& config) {
  IndustryRun run;
  run.industry = industry;
  const auto idx = index_of(industry);

  stage("sample", [&] {
    std::vector<Observation> fraud, pool;
    for (const auto& o : observations) {
      if (o.industry != industry) continue;
      (o.fraud ? fraud : pool).push_back(o);
    }
    if (fraud.empty()) throw DataError("no fraud cases");
    run.matched = match_controls(fraud, pool, derive_seed(config.seed, "match", idx));
    if (run.matched.pairs.empty()) throw DataError("no fraud case has a same-year control");
    run.sample = run.matched.observations(config.keep_unmatched);
    run.folds = stratified_folds(run.sample, config.folds, derive_seed(config.seed, "folds", idx));
    return 0;
  });

  stage("select", [&] {
    run.selection = config.selection == SelectionMode::Computed
                        ? select_features(run.sample, industry, config.selection_options())
                        : table7_preset(industry);
    return 0;
  });

  stage("train", [&] {
    CrossValidationOptions cv;
    cv.hard_auc = config.hard_auc;
    cv.selection_in_folds = config.selection_in_folds;
    cv.selection = config.selection_options();
    const auto design = make_design(run.sample, run.selection.selected);
    for (auto family : config.models) {
      const auto spec = config.model_spec(family);
      run.evaluations.push_back(cross_validate(run.sample, run.folds, spec, run.selection.selected, industry, cv));
      run.models.push_back(TrainedModel::fit(design, spec));
    }
    run.tree = TrainedModel::fit(design, config.model_spec(ModelFamily::DecisionTree));
    return 0;
  });

  stage("rules", [&] {
    const auto& tree = std::get<Tree>(run.tree.params());
    run.rules = extract_rules(tree, run.tree.feature_names(), industry, config.rules);
    run.report = render_report(industry, run.rules, run.selection, run.evaluations);
    return 0;
  });
  return run;
}

namespace {

class ArtifactWriter {
 public:
  ArtifactWriter(fs::path root, IndustryOutcome& outcome) : root_(std::move(root)), outcome_(outcome) {}

  void put(const std::string& relative, std::string_view content) {
    write_file((root_ / relative).string(), content);
    outcome_.artifacts.push_back({relative, hash_hex(content)});
  }

 private:
  fs::path root_;
  IndustryOutcome& outcome_;
};

void write_industry(const IndustryRun& run, const PipelineConfig& config, const fs::path& root,
                    IndustryOutcome& outcome) {
  ArtifactWriter w(root, outcome);
  const std::string dir = std::string(industry_slug(run.industry)) + "/";

  std::ostringstream sample;
  write_observations(sample, run.sample);
  w.put(dir + "sample.csv", sample.str());

  std::ostringstream folds;
  write_folds_csv(folds, run.sample, run.folds);
  w.put(dir + "folds.csv", folds.str());

  w.put(dir + "selection.json", dump(selection_to_json(run.selection, config.selection_options())));

  json evaluation = json::array();
  for (const auto& e : run.evaluations) evaluation.push_back(evaluation_to_json(e));
  w.put(dir + "evaluation.json", dump(evaluation));
  w.put(dir + "evaluation.txt", format_evaluation_table(run.evaluations));

  for (const auto& m : run.models) {
    w.put(dir + "models/" + std::string(model_tag(m.spec().family)) + ".json", dump(m.to_json()));
  }
  w.put(dir + "tree.json", dump(run.tree.to_json()));
  w.put(dir + "rules.json", dump(rules_to_json(run.rules)));
  w.put(dir + "report.md", run.report);
}

}  // namespace

PipelineResult run_observations(std::span<const Observation> observations, const PipelineConfig& config,
                                const std::string& input_hash, const json& input_summary) {
  const fs::path root(config.output_dir);
  stage("output", [&] {
    std::error_code ec;
    fs::create_directories(root, ec);
    if (ec) throw DataError("cannot create '" + root.string() + "': " + ec.message());
    return 0;
  });

  std::vector<Industry> industries = config.industries;
  if (industries.empty()) {
    for (auto i : all_industries()) {
      for (const auto& o : observations) {
        if (o.industry == i) {
          industries.push_back(i);
          break;
        }
      }
    }
  }

  PipelineResult result;
  for (auto industry : industries) {
    IndustryOutcome outcome;
    outcome.industry = industry;
    for (const auto& o : observations) {
      if (o.industry != industry) continue;
      (o.fraud ? outcome.n_fraud : outcome.n_control) += 1;
    }
    try {
      const auto run = analyze_industry(observations, industry, config);
      try {
        write_industry(run, config, root, outcome);
        outcome.status = "ok";
      } catch (const std::exception& e) {
        outcome.status = "failed";
        outcome.detail = std::string("write: ") + e.what();
        outcome.partial = true;
      }
    } catch (const DataError& e) {
      outcome.status = "skipped";
      outcome.detail = e.what();
    }
    result.industries.push_back(std::move(outcome));
  }

  json industries_json = json::array();
  for (const auto& o : result.industries) {
    json artifacts = json::object();
    for (const auto& a : o.artifacts) artifacts[a.path] = a.hash;
    industries_json.push_back({{"industry", std::string(industry_slug(o.industry))},
                               {"status", o.status},
                               {"detail", o.detail},
                               {"n_fraud", o.n_fraud},
                               {"n_control", o.n_control},
                               {"partial", o.partial},
                               {"artifacts", artifacts}});
  }
  const std::string config_text = config.to_text();
  write_file((root / "config.txt").string(), config_text);
  result.manifest = {{"format", kManifestFormat},
                     {"version", 1},
                     {"config_hash", config.hash()},
                     {"seed", config.seed},
                     {"input_hash", input_hash},
                     {"input", input_summary},
                     {"industries", industries_json}};
  write_file((root / "manifest.json").string(), dump(result.manifest));
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& config) {
  if (config.input.empty()) throw UsageError("config: input is not set");
  std::string bytes;
  IngestResult ingested;
  stage("ingest", [&] {
    bytes = read_file(config.input);
    std::istringstream in(bytes);
    ingested = parse_statements(in, {config.first_year, config.last_year});
    return 0;
  });
  std::ostringstream rejections;
  write_rejections(rejections, ingested.rejections);
  stage("output", [&] {
    write_file((fs::path(config.output_dir) / "rejections.csv").string(), rejections.str());
    return 0;
  });
  const auto observations = stage("ratios", [&] { return make_observations(ingested.statements); });
  const json summary = {{"data_rows", ingested.data_rows},
                        {"accepted", ingested.statements.size()},
                        {"rejected", ingested.rejections.size()}};
  return run_observations(observations, config, hash_hex(bytes), summary);
}

}  // namespace fraudscope
