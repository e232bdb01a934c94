#include "fraudscope/sampling.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "fraudscope/csv.hpp"
#include "fraudscope/error.hpp"
#include "fraudscope/random.hpp"

namespace fraudscope {

std::vector<Observation> MatchedSample::observations(bool keep_unmatched) const {
  std::vector<Observation> out;
  out.reserve(2 * pairs.size() + (keep_unmatched ? unmatched.size() : 0));
  for (const auto& pair : pairs) {
    out.push_back(pair.fraud);
    out.push_back(pair.control);
  }
  if (keep_unmatched) out.insert(out.end(), unmatched.begin(), unmatched.end());
  return out;
}

MatchedSample match_controls(std::span<const Observation> fraud, std::span<const Observation> pool,
                             std::uint64_t seed) {
  using Stratum = std::pair<Industry, int>;
  std::map<Stratum, std::vector<const Observation*>> strata;
  for (const auto& o : pool) {
    if (o.fraud) throw std::invalid_argument("match_controls: pool contains a fraud observation");
    strata[{o.industry, o.fiscal_year}].push_back(&o);
  }
  for (auto& [key, members] : strata) {
    std::stable_sort(members.begin(), members.end(), [](const auto* a, const auto* b) {
      return a->company_id < b->company_id;
    });
    const auto stratum_index =
        static_cast<std::uint64_t>(index_of(key.first)) * 100000ULL +
        static_cast<std::uint64_t>(static_cast<std::int64_t>(key.second) + 50000);
    Rng rng(derive_seed(seed, "match", stratum_index));
    rng.shuffle(members);
  }

  MatchedSample sample;
  sample.seed = seed;
  std::map<Stratum, std::size_t> next;
  for (const auto& f : fraud) {
    if (!f.fraud) throw std::invalid_argument("match_controls: fraud list contains a control");
    const Stratum key{f.industry, f.fiscal_year};
    const auto it = strata.find(key);
    std::size_t& used = next[key];
    if (it == strata.end() || used >= it->second.size()) {
      sample.unmatched.push_back(f);
      continue;
    }
    sample.pairs.push_back({f, *it->second[used]});
    ++used;
  }
  return sample;
}

std::vector<std::size_t> FoldAssignment::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldAssignment::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    if (fold_of[i] != fold) out.push_back(i);
  }
  return out;
}

FoldAssignment stratified_folds(std::span<const Observation> observations, std::size_t k,
                                std::uint64_t seed) {
  if (k < 2) throw std::invalid_argument("stratified_folds: k must be at least 2");
  std::vector<std::size_t> fraud;
  std::vector<std::size_t> control;
  for (std::size_t i = 0; i < observations.size(); ++i) {
    (observations[i].fraud ? fraud : control).push_back(i);
  }
  if (fraud.size() < k || control.size() < k) throw DataError("class too small to stratify");

  Rng rng(seed);
  rng.shuffle(fraud);
  rng.shuffle(control);

  FoldAssignment folds;
  folds.k = k;
  folds.fold_of.assign(observations.size(), 0);
  for (std::size_t i = 0; i < fraud.size(); ++i) folds.fold_of[fraud[i]] = i % k;
  for (std::size_t i = 0; i < control.size(); ++i) folds.fold_of[control[i]] = i % k;
  return folds;
}

void write_folds_csv(std::ostream& out, std::span<const Observation> observations,
                     const FoldAssignment& folds) {
  out << "company_id,fiscal_year,fold\n";
  for (std::size_t i = 0; i < observations.size(); ++i) {
    out << csv::escape(observations[i].company_id) << ',' << observations[i].fiscal_year << ','
        << folds.fold_of.at(i) << '\n';
  }
}

}  // namespace fraudscope
