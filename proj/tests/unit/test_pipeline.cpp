#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "fraudscope/error.hpp"
#include "fraudscope/pipeline.hpp"
#include "fraudscope/synth.hpp"
#include "fixtures.hpp"

using namespace fraudscope;
namespace fs = std::filesystem;

namespace {

std::vector<Observation> two_industries() {
  SynthConfig a;
  a.n_per_class = 40;
  a.industry = Industry::Trade;
  a.separation = 2.5;
  a.informative_ratios = {Ratio::IVTA};
  a.seed = 4;
  auto obs = make_observations(generate_dataset(a));
  SynthConfig b = a;
  b.industry = Industry::Services;
  b.informative_ratios = {Ratio::RETA};
  const auto more = make_observations(generate_dataset(b));
  obs.insert(obs.end(), more.begin(), more.end());
  return obs;
}

PipelineConfig small(const fs::path& out) {
  PipelineConfig c;
  c.output_dir = out.string();
  c.folds = 5;
  c.set("models", "lda,dt,rf");
  c.forest.n_trees = 15;
  return c;
}

}  // namespace

TEST_CASE("pipeline writes every artifact and is repeatable") {
  const auto obs = two_industries();
  const auto dir = fixture::temp_dir("pipeline");
  const auto config = small(dir / "a");
  const auto first = run_observations(obs, config, "input", nlohmann::json::object());
  CHECK(first.succeeded() == 2);
  for (const char* slug : {"trade", "services"}) {
    for (const char* file : {"sample.csv", "folds.csv", "selection.json", "evaluation.json", "evaluation.txt",
                             "models/lda.json", "models/dt.json", "models/rf.json", "tree.json", "rules.json",
                             "report.md"}) {
      CHECK_MESSAGE(fs::exists(dir / "a" / slug / file), slug, "/", file);
    }
  }
  CHECK(fs::exists(dir / "a" / "manifest.json"));
  CHECK(fs::exists(dir / "a" / "config.txt"));
  CHECK(first.manifest["config_hash"] == config.hash());
  CHECK(first.manifest["seed"] == config.seed);

  const auto again = run_observations(obs, small(dir / "b"), "input", nlohmann::json::object());
  CHECK(again.manifest.dump() == first.manifest.dump());
  CHECK(read_file((dir / "a" / "manifest.json").string()) == read_file((dir / "b" / "manifest.json").string()));
  CHECK(read_file((dir / "a" / "trade" / "report.md").string()) ==
        read_file((dir / "b" / "trade" / "report.md").string()));

  auto reseeded = small(dir / "c");
  reseeded.seed = 1;
  const auto other = run_observations(obs, reseeded, "input", nlohmann::json::object());
  CHECK(other.manifest["config_hash"] != first.manifest["config_hash"]);
}

TEST_CASE("industry failures are tagged and recorded") {
  auto obs = two_industries();
  // Finance gets fraud rows but no controls.
  for (int i = 0; i < 3; ++i) {
    auto o = fixture::observation("FIN" + std::to_string(i), 2000, Industry::Finance, true);
    o.ratios[Ratio::TLTA] = 0.5;
    obs.push_back(o);
  }
  auto config = small(fixture::temp_dir("pipeline-fail"));
  CHECK_THROWS_WITH_AS(analyze_industry(obs, Industry::Finance, config), doctest::Contains("sample:"), DataError);

  const auto result = run_observations(obs, config, "input", nlohmann::json::object());
  CHECK(result.succeeded() == 2);
  bool saw_failure = false;
  for (const auto& o : result.industries) {
    if (o.industry != Industry::Finance) continue;
    saw_failure = true;
    CHECK(o.status == "skipped");
    CHECK(o.detail.find("sample:") == 0);
  }
  CHECK(saw_failure);
}

TEST_CASE("preset selection uses the published set") {
  auto config = small(fixture::temp_dir("pipeline-preset"));
  config.selection = SelectionMode::Table7Preset;
  const auto run = analyze_industry(two_industries(), Industry::Trade, config);
  CHECK(run.selection.selected == table7_preset(Industry::Trade).selected);
  CHECK(run.selection.provenance == SelectionProvenance::Table7Preset);
}

TEST_CASE("missing input is an ingest error") {
  PipelineConfig config;
  config.input = "/nonexistent/statements.csv";
  config.output_dir = fixture::temp_dir("pipeline-missing").string();
  CHECK_THROWS_WITH_AS(run_pipeline(config), doctest::Contains("ingest:"), DataError);
  config.input.clear();
  CHECK_THROWS_AS(run_pipeline(config), UsageError);
}
