#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "fraudscope/ratios.hpp"

namespace fraudscope {

struct MatchedPair {
  Observation fraud;
  Observation control;
};

/// One control per fraud case, drawn without replacement from the same
/// industry and fiscal year.
struct MatchedSample {
  std::vector<MatchedPair> pairs;
  std::vector<Observation> unmatched;  // fraud cases whose stratum ran out
  std::uint64_t seed = 0;

  /// Flattened modelling sample: fraud, control, fraud, control, ..., then
  /// the unmatched fraud cases when requested.
  std::vector<Observation> observations(bool keep_unmatched = false) const;
};

/// Each stratum of the pool is put in (company_id, fiscal_year) order, then
/// shuffled with a stream derived from `seed`, industry and year; fraud
/// cases take controls in input order. Throws std::invalid_argument when a
/// fraud entry is labelled 0 or a pool entry labelled 1.
MatchedSample match_controls(std::span<const Observation> fraud, std::span<const Observation> pool,
                             std::uint64_t seed);

struct FoldAssignment {
  std::size_t k = 10;
  std::vector<std::size_t> fold_of;  // indexed like the input observations

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;
};

/// Shuffles each class with `seed` and deals it round-robin into k folds
/// starting at fold 0. Throws DataError("class too small to stratify") when
/// either class has fewer than k members, std::invalid_argument for k < 2.
FoldAssignment stratified_folds(std::span<const Observation> observations, std::size_t k,
                                std::uint64_t seed);

/// company_id,fiscal_year,fold
void write_folds_csv(std::ostream& out, std::span<const Observation> observations,
                     const FoldAssignment& folds);

}  // namespace fraudscope
