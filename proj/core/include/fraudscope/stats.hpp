#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "fraudscope/industry.hpp"
#include "fraudscope/ratios.hpp"

namespace fraudscope {

/// Sign of an association with the fraud label.
enum class Direction : int { Negative = -1, None = 0, Positive = 1 };

char direction_symbol(Direction d);

/// 1-based ranks; tied values share the mean of the positions they span.
/// Throws std::invalid_argument("nothing to rank") on empty input.
std::vector<double> midrank(std::span<const double> values);

/// Samples with min(n_fraud, n_nonfraud) at or below this size get an exact
/// permutation p-value.
inline constexpr std::size_t kExactMannWhitneyLimit = 8;

struct MannWhitneyResult {
  double u_statistic = 0.0;  // U of the fraud group, in [0, n_fraud * n_nonfraud]
  double z_score = 0.0;      // continuity- and tie-corrected, signed
  double p_value = 1.0;      // two-tailed
  Direction direction = Direction::None;  // fraud mean rank vs non-fraud mean rank
  std::size_t n_fraud = 0;
  std::size_t n_nonfraud = 0;
  bool exact = false;
};

/// Two-sample Mann-Whitney test. Throws DataError("insufficient data") when
/// either group is empty.
MannWhitneyResult mann_whitney(std::span<const double> fraud, std::span<const double> nonfraud);

/// Exact two-tailed permutation p-value, usable for any sample size whose
/// pooled rank sums fit in memory. Exposed for diagnostics and benchmarks.
double mann_whitney_exact_p(std::span<const double> fraud, std::span<const double> nonfraud);

/// Normal-approximation p-value with tie-corrected variance and continuity
/// correction.
double mann_whitney_normal_p(std::span<const double> fraud, std::span<const double> nonfraud);

/// Kendall tau-a: (concordant - discordant) / (n(n-1)/2). Pairs tied in
/// either variable count as neither. O(n log n). Throws DataError for n < 2
/// and std::invalid_argument for unequal lengths.
double kendall_tau_a(std::span<const double> x, std::span<const double> y);

/// Symmetric ratio-by-ratio Kendall tau-a matrix over pairwise-complete cases.
struct CorrelationMatrix {
  std::array<std::optional<double>, kRatioCount * kRatioCount> cells{};

  const std::optional<double>& at(Ratio a, Ratio b) const {
    return cells[index_of(a) * kRatioCount + index_of(b)];
  }
  std::optional<double>& at(Ratio a, Ratio b) { return cells[index_of(a) * kRatioCount + index_of(b)]; }
};

CorrelationMatrix correlation_matrix(std::span<const Observation> observations);

/// 20x20 CSV with header row and column; blank = missing.
void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix);

enum class SelectionProvenance { Computed, Table7Preset };

struct RatioTest {
  Ratio ratio;
  std::optional<MannWhitneyResult> result;  // empty when a class has no values
};

struct PrunedRatio {
  Ratio dropped;
  Ratio kept;
  double tau;
};

struct FeatureSelection {
  Industry industry = Industry::Agriculture;
  std::vector<Ratio> selected;  // nonempty, canonical ratio order
  SelectionProvenance provenance = SelectionProvenance::Computed;
  std::vector<RatioTest> tests;       // computed mode: one per ratio
  std::vector<PrunedRatio> pruned;    // computed mode: correlation pruning log
  bool fallback = false;              // no ratio reached alpha; kept the smallest p
};

struct SelectionOptions {
  double alpha = 0.05;
  double tau_cap = 0.65;
};

/// Per-ratio Mann-Whitney screening at `alpha`, then greedy pruning: while any
/// kept pair has |tau| > tau_cap (largest |tau| first), drop the member with
/// the larger p-value, or the later ratio on a tie. Throws DataError("cannot
/// test separation") when the industry lacks either class.
FeatureSelection select_features(std::span<const Observation> observations, Industry industry,
                                 const SelectionOptions& options = {});

/// The published per-industry ratio sets, usable without the source data.
FeatureSelection table7_preset(Industry industry);

/// Published sign of each significant ratio by industry; None where the
/// ratio was not significant.
Direction published_sign(Industry industry, Ratio ratio);

const char* provenance_name(SelectionProvenance provenance);

}  // namespace fraudscope
