#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fraudscope/industry.hpp"
#include "fraudscope/ingest.hpp"
#include "fraudscope/ratios.hpp"

namespace fraudscope {

struct SynthConfig {
  std::size_t n_per_class = 400;
  Industry industry = Industry::Manufacturing;
  double separation = 0.0;  // shift in standard units of the item's log-scale noise
  std::vector<Ratio> informative_ratios;
  std::uint64_t seed = 0;
  std::size_t controls_per_fraud = 1;
  int first_year = 1990;
  int last_year = 2012;
};

/// Log-normal statements around an industry-specific asset scale. Fraud rows
/// move the numerator item of each informative ratio by separation * sigma on
/// the log scale, in the published direction for the industry when there is
/// one and upwards otherwise; an item shared by several informative ratios
/// moves once, following the first of them. Each fraud row is followed by its
/// controls from the same fiscal year. Throws std::invalid_argument for an
/// invalid config.
std::vector<RawStatement> generate_dataset(const SynthConfig& config);

}  // namespace fraudscope
