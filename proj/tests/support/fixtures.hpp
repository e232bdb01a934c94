#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fraudscope/ingest.hpp"
#include "fraudscope/ratios.hpp"

namespace fixture {

using fraudscope::Industry;
using fraudscope::LineItem;

// Every item present and positive; ratios all defined.
inline fraudscope::RawStatement full_statement(std::string id = "C1", int year = 2001, int sic = 2834,
                                               bool fraud = false) {
  fraudscope::RawStatement s;
  s.company_id = std::move(id);
  s.fiscal_year = year;
  s.sic_code = sic;
  s.fraud = fraud;
  double v = 200.0;
  for (auto item : fraudscope::all_line_items()) {
    s[item] = v;
    v += 10.0;
  }
  s[LineItem::TotalAssets] = 200.0;
  s[LineItem::TotalLiabilities] = 100.0;
  return s;
}

inline fraudscope::Observation observation(std::string id, int year, Industry industry, bool fraud) {
  fraudscope::Observation o;
  o.company_id = std::move(id);
  o.fiscal_year = year;
  o.industry = industry;
  o.fraud = fraud;
  return o;
}

struct Labelled {
  Eigen::MatrixXd x;
  std::vector<int> labels;
};

// Gaussian clouds with the fraud class shifted by `shift` in every column.
// With balanced = true the classes alternate 1,0,1,0...
inline Labelled random_labelled(std::uint64_t seed, std::size_t n, std::size_t p, double shift = 1.0,
                                bool balanced = false, bool integer_grid = false) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  Labelled d;
  d.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
  d.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    int t = balanced ? static_cast<int>(i % 2 == 0) : static_cast<int>(coin(gen));
    if (i == 0) t = 1;
    if (i == 1) t = 0;
    d.labels[i] = t;
    for (std::size_t j = 0; j < p; ++j) {
      double v = normal(gen) + shift * t;
      if (integer_grid) v = std::round(v * 2.0);
      d.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return d;
}

inline std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("fraudscope-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace fixture
