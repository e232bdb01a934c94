// fraudscope: command-line front end for the ratio-based fraud screening
// pipeline. Each subcommand runs one stage; `run` chains them all.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fraudscope/classifier.hpp"
#include "fraudscope/config.hpp"
#include "fraudscope/design.hpp"
#include "fraudscope/error.hpp"
#include "fraudscope/ingest.hpp"
#include "fraudscope/metrics.hpp"
#include "fraudscope/pipeline.hpp"
#include "fraudscope/random.hpp"
#include "fraudscope/ratios.hpp"
#include "fraudscope/rules.hpp"
#include "fraudscope/sampling.hpp"
#include "fraudscope/stats.hpp"
#include "fraudscope/synth.hpp"

namespace fs = std::filesystem;
using namespace fraudscope;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kInternal = 3 };

// "-" means stdout.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    write_file(path, content);
  }
}

Industry parse_industry(const std::string& slug) {
  const auto industry = industry_from_slug(slug);
  if (!industry) throw UsageError("unknown industry '" + slug + "'");
  return *industry;
}

std::vector<Observation> load_observations(const std::string& path) {
  std::istringstream in(read_file(path));
  return read_observations(in);
}

std::vector<Observation> only(std::vector<Observation> obs, const std::string& slug) {
  if (slug.empty()) return obs;
  const auto industry = parse_industry(slug);
  std::erase_if(obs, [&](const Observation& o) { return o.industry != industry; });
  return obs;
}

IngestResult ingest_file(const std::string& path, int first_year, int last_year) {
  std::istringstream in(read_file(path));
  return parse_statements(in, {first_year, last_year});
}

// Config file first, then flags that were given on the command line.
struct ConfigFlags {
  std::string config_path;
  std::string input;
  std::string output_dir;
  std::uint64_t seed = 0;
  bool hard_auc = false;
  bool keep_unmatched = false;
  bool selection_in_folds = false;
  std::vector<std::string> sets;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "key = value configuration file");
    cmd->add_option("-i,--input", input, "input file (overrides config)");
    cmd->add_option("-o,--output-dir", output_dir, "artifact directory (overrides config)");
    seed_opt = cmd->add_option("--seed", seed, "master seed (overrides config)");
    cmd->add_flag("--hard-auc", hard_auc, "AUC from 0/1 predictions instead of scores");
    cmd->add_flag("--keep-unmatched", keep_unmatched, "keep fraud cases without a control");
    cmd->add_flag("--selection-in-folds", selection_in_folds, "rerun ratio selection inside each training split");
    cmd->add_option("--set", sets, "extra key=value override, repeatable");
  }

  PipelineConfig resolve() const {
    PipelineConfig config = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    if (!input.empty()) config.input = input;
    if (!output_dir.empty()) config.output_dir = output_dir;
    if (seed_opt && seed_opt->count() > 0) config.seed = seed;
    if (hard_auc) config.hard_auc = true;
    if (keep_unmatched) config.keep_unmatched = true;
    if (selection_in_folds) config.selection_in_folds = true;
    for (const auto& kv : sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--set expects key=value, got '" + kv + "'");
      std::string key = kv.substr(0, eq);
      while (!key.empty() && key.back() == ' ') key.pop_back();
      config.set(key, kv.substr(eq + 1));
    }
    return config;
  }

  CLI::Option* seed_opt = nullptr;
};

void summarize(const PipelineResult& result, const std::string& output_dir) {
  for (const auto& o : result.industries) {
    std::cerr << industry_slug(o.industry) << ": " << o.status;
    if (!o.detail.empty()) std::cerr << " (" << o.detail << ")";
    std::cerr << '\n';
  }
  std::cerr << "manifest: " << (fs::path(output_dir) / "manifest.json").string() << '\n';
}

int finish(const PipelineResult& result, const std::string& output_dir) {
  summarize(result, output_dir);
  if (result.succeeded() == 0) {
    std::cerr << "error: no industry could be analysed\n";
    return kData;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Financial-ratio fraud screening: ratio tests, classifiers and red-flag rules"};
  app.require_subcommand(1);
  std::function<int()> action;

  // ingest
  std::string in_path, out_path = "-", rejections_path;
  int first_year = 1990, last_year = 2012;
  auto* ingest = app.add_subcommand("ingest", "validate raw statements, write accepted rows");
  ingest->add_option("-i,--input", in_path, "raw statement CSV")->required();
  ingest->add_option("-o,--output", out_path, "accepted rows (default stdout)");
  ingest->add_option("--rejections", rejections_path, "write rejected lines with reasons");
  ingest->add_option("--first-year", first_year, "first fiscal year kept");
  ingest->add_option("--last-year", last_year, "last fiscal year kept");
  ingest->callback([&] {
    action = [&] {
      const auto r = ingest_file(in_path, first_year, last_year);
      std::ostringstream out;
      write_statements(out, r.statements);
      emit(out_path, out.str());
      if (!rejections_path.empty()) {
        std::ostringstream rej;
        write_rejections(rej, r.rejections);
        write_file(rejections_path, rej.str());
      }
      std::cerr << "ingest: " << r.statements.size() << " accepted, " << r.rejections.size() << " rejected\n";
      return kOk;
    };
  });

  // ratios
  auto* ratios = app.add_subcommand("ratios", "compute the twenty ratios per company-year");
  ratios->add_option("-i,--input", in_path, "raw statement CSV")->required();
  ratios->add_option("-o,--output", out_path, "observation CSV (default stdout)");
  ratios->add_option("--first-year", first_year, "first fiscal year kept");
  ratios->add_option("--last-year", last_year, "last fiscal year kept");
  ratios->callback([&] {
    action = [&] {
      const auto r = ingest_file(in_path, first_year, last_year);
      const auto obs = make_observations(r.statements);
      std::ostringstream out;
      write_observations(out, obs);
      emit(out_path, out.str());
      std::cerr << "ratios: " << obs.size() << " observations, " << r.rejections.size() << " rejected rows\n";
      return kOk;
    };
  });

  // select
  std::string industry_slug_arg;
  double alpha = 0.05, tau_cap = 0.65;
  bool preset = false;
  auto* select = app.add_subcommand("select", "Mann-Whitney screening and correlation pruning");
  select->add_option("-i,--input", in_path, "observation CSV")->required();
  select->add_option("--industry", industry_slug_arg, "industry slug")->required();
  select->add_option("--alpha", alpha, "significance level");
  select->add_option("--tau-cap", tau_cap, "largest |tau| allowed between kept ratios");
  select->add_flag("--preset", preset, "use the published per-industry ratio set");
  select->add_option("-o,--output", out_path, "selection JSON (default stdout)");
  select->callback([&] {
    action = [&] {
      const auto industry = parse_industry(industry_slug_arg);
      const SelectionOptions options{alpha, tau_cap};
      FeatureSelection s;
      if (preset) {
        s = table7_preset(industry);
      } else {
        const auto obs = only(load_observations(in_path), industry_slug_arg);
        s = select_features(obs, industry, options);
      }
      emit(out_path, selection_to_json(s, options).dump(2) + "\n");
      return kOk;
    };
  });

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Kendall tau-a matrix of the twenty ratios");
  correlate->add_option("-i,--input", in_path, "observation CSV")->required();
  correlate->add_option("--industry", industry_slug_arg, "restrict to one industry");
  correlate->add_option("-o,--output", out_path, "matrix CSV (default stdout)");
  correlate->callback([&] {
    action = [&] {
      const auto obs = only(load_observations(in_path), industry_slug_arg);
      std::ostringstream out;
      write_correlation_csv(out, correlation_matrix(obs));
      emit(out_path, out.str());
      return kOk;
    };
  });

  // sample
  std::uint64_t seed = PipelineConfig{}.seed;
  std::size_t k = 10;
  bool keep_unmatched = false;
  std::string folds_path;
  auto* sample = app.add_subcommand("sample", "matched control sampling and stratified folds");
  sample->add_option("-i,--input", in_path, "observation CSV")->required();
  sample->add_option("--industry", industry_slug_arg, "industry slug")->required();
  sample->add_option("--seed", seed, "master seed");
  sample->add_option("--folds", k, "number of folds");
  sample->add_flag("--keep-unmatched", keep_unmatched, "keep fraud cases without a control");
  sample->add_option("-o,--output", out_path, "matched sample CSV (default stdout)");
  sample->add_option("--folds-output", folds_path, "write fold assignment CSV");
  sample->callback([&] {
    action = [&] {
      const auto industry = parse_industry(industry_slug_arg);
      const auto idx = index_of(industry);
      std::vector<Observation> fraud, pool;
      for (auto& o : only(load_observations(in_path), industry_slug_arg)) (o.fraud ? fraud : pool).push_back(o);
      const auto matched = match_controls(fraud, pool, derive_seed(seed, "match", idx));
      const auto obs = matched.observations(keep_unmatched);
      std::ostringstream out;
      write_observations(out, obs);
      emit(out_path, out.str());
      if (!folds_path.empty()) {
        const auto folds = stratified_folds(obs, k, derive_seed(seed, "folds", idx));
        std::ostringstream f;
        write_folds_csv(f, obs, folds);
        write_file(folds_path, f.str());
      }
      std::cerr << "sample: " << matched.pairs.size() << " pairs, " << matched.unmatched.size() << " unmatched\n";
      return kOk;
    };
  });

  // train
  ConfigFlags train_flags;
  auto* train = app.add_subcommand("train", "cross-validate and fit every configured model from an observation CSV");
  train_flags.attach(train);
  train->callback([&] {
    action = [&] {
      const auto config = train_flags.resolve();
      if (config.input.empty()) throw UsageError("train: --input or config input is required");
      const std::string bytes = read_file(config.input);
      std::istringstream in(bytes);
      const auto obs = read_observations(in);
      const auto result = run_observations(obs, config, hash_hex(bytes), json{{"observations", obs.size()}});
      return finish(result, config.output_dir);
    };
  });

  // evaluate
  std::string model_path;
  bool hard_auc = false;
  auto* evaluate = app.add_subcommand("evaluate", "score observations with a saved model");
  evaluate->add_option("-m,--model", model_path, "model JSON")->required();
  evaluate->add_option("-i,--input", in_path, "observation CSV")->required();
  evaluate->add_option("--industry", industry_slug_arg, "restrict to one industry");
  evaluate->add_flag("--hard-auc", hard_auc, "AUC from 0/1 predictions instead of scores");
  evaluate->add_option("-o,--output", out_path, "metrics JSON (default stdout)");
  evaluate->callback([&] {
    action = [&] {
      const auto model = TrainedModel::from_json(json::parse(read_file(model_path)));
      std::vector<Ratio> features;
      for (const auto& name : model.feature_names()) {
        const auto r = ratio_from_name(name);
        if (!r) throw DataError("model feature '" + name + "' is not a ratio");
        features.push_back(*r);
      }
      const auto obs = only(load_observations(in_path), industry_slug_arg);
      if (obs.empty()) throw DataError("no observations to score");
      const auto design = make_design(obs, features);
      std::vector<int> predicted;
      std::vector<double> scores;
      for (std::size_t r = 0; r < design.rows(); ++r) {
        const auto p = model.predict(row_values(design.x, r));
        predicted.push_back(p.label);
        scores.push_back(p.score);
      }
      const auto cm = confusion(design.labels, predicted);
      auto metrics = classification_metrics(cm);
      std::vector<double> auc_input = scores;
      if (hard_auc) auc_input.assign(predicted.begin(), predicted.end());
      try {
        metrics[Metric::Auc] = roc_auc(design.labels, auc_input);
      } catch (const DataError&) {
        std::cerr << "evaluate: single-class input, AUC undefined\n";
      }
      const json doc = {{"model", std::string(model_label(model.spec().family))},
                        {"observations", obs.size()},
                        {"confusion", {{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}}},
                        {"metrics", metrics_to_json(metrics)}};
      emit(out_path, doc.dump(2) + "\n");
      return kOk;
    };
  });

  // rules
  RuleOptions rule_options;
  std::string replay_path;
  auto* rules = app.add_subcommand("rules", "extract red-flag rules from a saved decision tree");
  rules->add_option("-m,--model", model_path, "decision tree model JSON")->required();
  rules->add_option("--industry", industry_slug_arg, "industry slug")->required();
  rules->add_option("--min-fraud-fraction", rule_options.min_fraud_fraction, "leaf fraud fraction floor");
  rules->add_option("--min-support", rule_options.min_support, "leaf support floor");
  rules->add_option("--replay", replay_path, "observation CSV to replay the rules on");
  rules->add_option("-o,--output", out_path, "rules JSON (default stdout)");
  rules->callback([&] {
    action = [&] {
      const auto industry = parse_industry(industry_slug_arg);
      const auto model = TrainedModel::from_json(json::parse(read_file(model_path)));
      const auto* tree = std::get_if<Tree>(&model.params());
      if (!tree) throw UsageError("rules: model is not a decision tree");
      const auto extracted = extract_rules(*tree, model.feature_names(), industry, rule_options);
      json doc = rules_to_json(extracted);
      if (!replay_path.empty()) {
        std::vector<Ratio> features;
        for (const auto& name : model.feature_names()) features.push_back(*ratio_from_name(name));
        const auto obs = only(load_observations(replay_path), industry_slug_arg);
        const auto design = make_design(obs, features);
        for (std::size_t i = 0; i < extracted.size(); ++i) {
          std::size_t hits = 0, fraud = 0;
          for (std::size_t r = 0; r < design.rows(); ++r) {
            const auto x = model.preprocessor().transform_row(row_values(design.x, r));
            if (extracted[i].matches(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())))) {
              ++hits;
              fraud += static_cast<std::size_t>(design.labels[r]);
            }
          }
          doc[i]["replay"] = {{"matched", hits},
                              {"fraud_fraction", hits ? json(static_cast<double>(fraud) / static_cast<double>(hits))
                                                      : json(nullptr)}};
        }
      }
      emit(out_path, doc.dump(2) + "\n");
      return kOk;
    };
  });

  // synth
  SynthConfig synth_config;
  std::string synth_industry = "manufacturing";
  std::vector<std::string> informative;
  auto* synth = app.add_subcommand("synth", "generate labelled synthetic statements");
  synth->add_option("--industry", synth_industry, "industry slug");
  synth->add_option("-n,--n-per-class", synth_config.n_per_class, "fraud rows");
  synth->add_option("--controls-per-fraud", synth_config.controls_per_fraud, "control rows per fraud row");
  synth->add_option("--separation", synth_config.separation, "fraud shift in standard units");
  synth->add_option("--informative", informative, "ratios carrying the signal")->delimiter(',');
  synth->add_option("--seed", synth_config.seed, "seed");
  synth->add_option("--first-year", synth_config.first_year, "first fiscal year");
  synth->add_option("--last-year", synth_config.last_year, "last fiscal year");
  synth->add_option("-o,--output", out_path, "statement CSV (default stdout)");
  synth->callback([&] {
    action = [&] {
      synth_config.industry = parse_industry(synth_industry);
      for (const auto& name : informative) {
        const auto r = ratio_from_name(name);
        if (!r) throw UsageError("unknown ratio '" + name + "'");
        synth_config.informative_ratios.push_back(*r);
      }
      std::vector<RawStatement> rows;
      try {
        rows = generate_dataset(synth_config);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::ostringstream out;
      write_statements(out, rows);
      emit(out_path, out.str());
      return kOk;
    };
  });

  // run
  ConfigFlags run_flags;
  std::string golden_dir;
  auto* run = app.add_subcommand("run", "ingest, select, cross-validate, extract rules and report");
  run_flags.attach(run);
  run->add_option("--golden", golden_dir, "also copy each report to DIR/<industry>_report.md");
  run->callback([&] {
    action = [&] {
      const auto config = run_flags.resolve();
      const auto result = run_pipeline(config);
      if (!golden_dir.empty()) {
        for (const auto& o : result.industries) {
          if (o.status != "ok") continue;
          const std::string slug(industry_slug(o.industry));
          const auto report = read_file((fs::path(config.output_dir) / slug / "report.md").string());
          write_file((fs::path(golden_dir) / (slug + "_report.md")).string(), report);
        }
      }
      return finish(result, config.output_dir);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::string msg = e.what();
    // pipeline errors already carry their stage
    if (name != "run" && name != "train") msg = name + ": " + msg;
    std::cerr << "error: " << msg << '\n';
    return kData;
  } catch (const std::exception& e) {
    std::cerr << "internal error (" << name << "): " << e.what() << '\n';
    return kInternal;
  }
}
