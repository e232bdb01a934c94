#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fraudscope/classifier.hpp"
#include "fraudscope/config.hpp"
#include "fraudscope/metrics.hpp"
#include "fraudscope/rules.hpp"
#include "fraudscope/sampling.hpp"
#include "fraudscope/stats.hpp"

namespace fraudscope {

/// Everything computed for one industry, before anything is written.
struct IndustryRun {
  Industry industry = Industry::Agriculture;
  MatchedSample matched;
  std::vector<Observation> sample;
  FoldAssignment folds;
  FeatureSelection selection;
  std::vector<EvaluationReport> evaluations;  // config model order
  std::vector<TrainedModel> models;           // full-sample fits, same order
  TrainedModel tree;                          // full-sample decision tree behind the rules
  std::vector<RedFlagRule> rules;
  std::string report;
};

/// Per-stage seeds: matching derive_seed(seed, "match", industry), folds
/// derive_seed(seed, "folds", industry), forests derive_seed(seed, "forest").
/// Throws DataError tagged with the failing stage ("sample: ...").
IndustryRun analyze_industry(std::span<const Observation> observations, Industry industry,
                             const PipelineConfig& config);

struct ArtifactRecord {
  std::string path;  // relative to the output directory
  std::string hash;  // FNV-1a of the bytes, 16 hex digits
};

struct IndustryOutcome {
  Industry industry = Industry::Agriculture;
  std::string status;  // ok, skipped or failed
  std::string detail;
  std::size_t n_fraud = 0;
  std::size_t n_control = 0;
  std::vector<ArtifactRecord> artifacts;
  bool partial = false;
};

struct PipelineResult {
  std::vector<IndustryOutcome> industries;
  nlohmann::json manifest;
  std::size_t succeeded() const;
};

/// Matching, selection, cross-validation, rules and reports for every
/// configured industry, writing artifacts under config.output_dir.
/// `input_hash` and `input_summary` go into the manifest.
PipelineResult run_observations(std::span<const Observation> observations, const PipelineConfig& config,
                                const std::string& input_hash, const nlohmann::json& input_summary);

/// Reads config.input, then run_observations. Errors are tagged "ingest: ".
PipelineResult run_pipeline(const PipelineConfig& config);

nlohmann::json selection_to_json(const FeatureSelection& selection, const SelectionOptions& options);

std::string hash_hex(std::string_view bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace fraudscope
