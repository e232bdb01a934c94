#include "fraudscope/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "fraudscope/csv.hpp"
#include "fraudscope/error.hpp"

namespace fraudscope {

namespace {

// Twice the midranks of the pooled sample; always integers.
std::vector<std::int64_t> doubled_midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<std::int64_t> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    // positions i+1 .. j share the rank (i+1+j)/2
    const auto doubled = static_cast<std::int64_t>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = doubled;
    i = j;
  }
  return ranks;
}

std::vector<double> pooled(std::span<const double> a, std::span<const double> b) {
  std::vector<double> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return all;
}

double tie_term(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  double sum = 0.0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const auto t = static_cast<double>(j - i);
    sum += t * t * t - t;
    i = j;
  }
  return sum;
}

struct NormalApprox {
  double z = 0.0;
  double p = 1.0;
  bool degenerate = false;
};

NormalApprox normal_approx(double u, double n1, double n2, double ties) {
  const double n = n1 + n2;
  const double mean = 0.5 * n1 * n2;
  double variance = n1 * n2 / 12.0 * ((n + 1.0) - ties / (n * (n - 1.0)));
  if (!(variance > 0.0)) return {0.0, 1.0, true};
  const double diff = u - mean;
  const double corrected = std::max(std::abs(diff) - 0.5, 0.0);
  const double z = std::copysign(corrected / std::sqrt(variance), diff);
  const double p = std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
  return {corrected == 0.0 ? 0.0 : z, p, false};
}

void require_nonempty(std::span<const double> fraud, std::span<const double> nonfraud) {
  if (fraud.empty() || nonfraud.empty()) throw DataError("insufficient data");
}

// Inversion count of `values` (pairs i<j with values[i] > values[j]) by merge
// sort; sorts `values` in place.
std::int64_t count_inversions(std::vector<double>& values, std::vector<double>& scratch,
                              std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t swaps = count_inversions(values, scratch, lo, mid) +
                       count_inversions(values, scratch, mid, hi);
  std::size_t i = lo;
  std::size_t j = mid;
  std::size_t k = lo;
  while (i < mid && j < hi) {
    if (values[i] <= values[j]) {
      scratch[k++] = values[i++];
    } else {
      swaps += static_cast<std::int64_t>(mid - i);
      scratch[k++] = values[j++];
    }
  }
  while (i < mid) scratch[k++] = values[i++];
  while (j < hi) scratch[k++] = values[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            values.begin() + static_cast<std::ptrdiff_t>(lo));
  return swaps;
}

// Sum of t(t-1)/2 over runs of equal adjacent values.
template <typename Equal>
std::int64_t tied_pairs(std::size_t n, Equal equal) {
  std::int64_t total = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && equal(i, j)) ++j;
    const auto t = static_cast<std::int64_t>(j - i);
    total += t * (t - 1) / 2;
    i = j;
  }
  return total;
}

struct RatioColumns {
  std::vector<double> fraud;
  std::vector<double> nonfraud;
};

RatioColumns split_by_class(std::span<const Observation* const> rows, Ratio r) {
  RatioColumns out;
  for (const Observation* o : rows) {
    if (const auto& v = o->ratios[r]) (o->fraud ? out.fraud : out.nonfraud).push_back(*v);
  }
  return out;
}

std::optional<double> pairwise_tau(std::span<const Observation* const> rows, Ratio a, Ratio b) {
  std::vector<double> x;
  std::vector<double> y;
  for (const Observation* o : rows) {
    const auto& va = o->ratios[a];
    const auto& vb = o->ratios[b];
    if (va && vb) {
      x.push_back(*va);
      y.push_back(*vb);
    }
  }
  if (x.size() < 2) return std::nullopt;
  return kendall_tau_a(x, y);
}

}  // namespace

char direction_symbol(Direction d) {
  switch (d) {
    case Direction::Positive:
      return '+';
    case Direction::Negative:
      return '-';
    case Direction::None:
      break;
  }
  return '0';
}

std::vector<double> midrank(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("nothing to rank");
  const auto doubled = doubled_midranks(values);
  std::vector<double> ranks(doubled.size());
  std::transform(doubled.begin(), doubled.end(), ranks.begin(),
                 [](std::int64_t d) { return static_cast<double>(d) / 2.0; });
  return ranks;
}

double mann_whitney_exact_p(std::span<const double> fraud, std::span<const double> nonfraud) {
  require_nonempty(fraud, nonfraud);
  const auto all = pooled(fraud, nonfraud);
  const auto ranks = doubled_midranks(all);
  const std::size_t n = all.size();

  // Enumerate the smaller group; |S - E[S]| is the same for either group.
  const bool fraud_smaller = fraud.size() <= nonfraud.size();
  const std::size_t m = fraud_smaller ? fraud.size() : nonfraud.size();
  const std::size_t offset = fraud_smaller ? 0 : fraud.size();
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < m; ++i) observed += ranks[offset + i];
  const auto center = static_cast<std::int64_t>(m) * static_cast<std::int64_t>(n + 1);
  const std::int64_t distance = std::abs(observed - center);

  std::vector<std::int64_t> sorted = ranks;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  std::int64_t max_sum = 0;
  for (std::size_t i = 0; i < m; ++i) max_sum += sorted[i];

  // counts[j * width + s]: number of j-subsets of the items seen so far whose
  // doubled rank sum is s.
  const auto width = static_cast<std::size_t>(max_sum + 1);
  std::vector<double> counts((m + 1) * width, 0.0);
  counts[0] = 1.0;
  std::size_t seen = 0;
  for (const std::int64_t r : ranks) {
    ++seen;
    const auto step = static_cast<std::size_t>(r);
    for (std::size_t j = std::min(m, seen); j >= 1; --j) {
      double* dst = &counts[j * width];
      const double* src = &counts[(j - 1) * width];
      for (std::size_t s = width - 1; s >= step; --s) {
        dst[s] += src[s - step];
        if (s == step) break;
      }
    }
  }

  double extreme = 0.0;
  double total = 0.0;
  const double* row = &counts[m * width];
  for (std::size_t s = 0; s < width; ++s) {
    if (row[s] == 0.0) continue;
    total += row[s];
    if (std::abs(static_cast<std::int64_t>(s) - center) >= distance) extreme += row[s];
  }
  return std::min(1.0, extreme / total);
}

double mann_whitney_normal_p(std::span<const double> fraud, std::span<const double> nonfraud) {
  require_nonempty(fraud, nonfraud);
  const auto all = pooled(fraud, nonfraud);
  const auto ranks = doubled_midranks(all);
  std::int64_t doubled_sum = 0;
  for (std::size_t i = 0; i < fraud.size(); ++i) doubled_sum += ranks[i];
  const auto n1 = static_cast<double>(fraud.size());
  const auto n2 = static_cast<double>(nonfraud.size());
  const double u = static_cast<double>(doubled_sum) / 2.0 - n1 * (n1 + 1.0) / 2.0;
  return normal_approx(u, n1, n2, tie_term(all)).p;
}

MannWhitneyResult mann_whitney(std::span<const double> fraud, std::span<const double> nonfraud) {
  require_nonempty(fraud, nonfraud);
  const auto all = pooled(fraud, nonfraud);
  const auto ranks = doubled_midranks(all);

  std::int64_t fraud_sum = 0;
  std::int64_t nonfraud_sum = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    (i < fraud.size() ? fraud_sum : nonfraud_sum) += ranks[i];
  }

  MannWhitneyResult result;
  result.n_fraud = fraud.size();
  result.n_nonfraud = nonfraud.size();
  const auto n1 = static_cast<double>(fraud.size());
  const auto n2 = static_cast<double>(nonfraud.size());
  result.u_statistic = static_cast<double>(fraud_sum) / 2.0 - n1 * (n1 + 1.0) / 2.0;

  // Compare mean ranks without division.
  const std::int64_t lhs = fraud_sum * static_cast<std::int64_t>(nonfraud.size());
  const std::int64_t rhs = nonfraud_sum * static_cast<std::int64_t>(fraud.size());
  result.direction = lhs > rhs ? Direction::Positive
                     : lhs < rhs ? Direction::Negative
                                 : Direction::None;

  const auto approx = normal_approx(result.u_statistic, n1, n2, tie_term(all));
  result.z_score = approx.z;
  const bool small = std::min(fraud.size(), nonfraud.size()) <= kExactMannWhitneyLimit;
  if (approx.degenerate) {
    // every value tied: each relabelling gives the same rank sum
    result.p_value = 1.0;
    result.direction = Direction::None;
    result.exact = small;
    return result;
  }
  if (small) {
    result.p_value = mann_whitney_exact_p(fraud, nonfraud);
    result.exact = true;
  } else {
    result.p_value = approx.p;
  }
  return result;
}

double kendall_tau_a(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("kendall_tau_a: length mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw DataError("insufficient pairs");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
  });

  const std::int64_t x_ties =
      tied_pairs(n, [&](std::size_t i, std::size_t j) { return x[order[i]] == x[order[j]]; });
  const std::int64_t joint_ties = tied_pairs(n, [&](std::size_t i, std::size_t j) {
    return x[order[i]] == x[order[j]] && y[order[i]] == y[order[j]];
  });

  std::vector<double> ys(n);
  for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];
  std::vector<double> scratch(n);
  const std::int64_t discordant = count_inversions(ys, scratch, 0, n);
  // ys is now sorted
  const std::int64_t y_ties =
      tied_pairs(n, [&](std::size_t i, std::size_t j) { return ys[i] == ys[j]; });

  const auto total = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n - 1) / 2;
  const std::int64_t net = total - x_ties - y_ties + joint_ties - 2 * discordant;
  return static_cast<double>(net) / static_cast<double>(total);
}

CorrelationMatrix correlation_matrix(std::span<const Observation> observations) {
  std::vector<const Observation*> rows;
  rows.reserve(observations.size());
  for (const auto& o : observations) rows.push_back(&o);

  CorrelationMatrix m;
  for (const Ratio a : all_ratios()) {
    std::size_t present = 0;
    for (const auto* o : rows) present += o->ratios[a].has_value();
    if (present >= 2) m.at(a, a) = 1.0;
    for (std::size_t j = index_of(a) + 1; j < kRatioCount; ++j) {
      const auto b = static_cast<Ratio>(j);
      const auto tau = pairwise_tau(rows, a, b);
      m.at(a, b) = tau;
      m.at(b, a) = tau;
    }
  }
  return m;
}

void write_correlation_csv(std::ostream& out, const CorrelationMatrix& matrix) {
  out << "ratio";
  for (const Ratio r : all_ratios()) out << ',' << ratio_name(r);
  out << '\n';
  for (const Ratio a : all_ratios()) {
    out << ratio_name(a);
    for (const Ratio b : all_ratios()) {
      out << ',';
      if (const auto& v = matrix.at(a, b)) out << csv::format_double(*v);
    }
    out << '\n';
  }
}

FeatureSelection select_features(std::span<const Observation> observations, Industry industry,
                                 const SelectionOptions& options) {
  std::vector<const Observation*> rows;
  bool has_fraud = false;
  bool has_control = false;
  for (const auto& o : observations) {
    if (o.industry != industry) continue;
    rows.push_back(&o);
    (o.fraud ? has_fraud : has_control) = true;
  }
  if (!has_fraud || !has_control) throw DataError("cannot test separation");

  FeatureSelection selection;
  selection.industry = industry;
  selection.provenance = SelectionProvenance::Computed;

  std::array<double, kRatioCount> p_values{};
  p_values.fill(2.0);  // sentinel above any p-value: untestable
  std::vector<Ratio> kept;
  for (const Ratio r : all_ratios()) {
    const auto columns = split_by_class(rows, r);
    RatioTest test{r, std::nullopt};
    if (!columns.fraud.empty() && !columns.nonfraud.empty()) {
      test.result = mann_whitney(columns.fraud, columns.nonfraud);
      p_values[index_of(r)] = test.result->p_value;
      if (test.result->p_value < options.alpha) kept.push_back(r);
    }
    selection.tests.push_back(test);
  }

  if (kept.empty()) {
    const auto best = std::min_element(p_values.begin(), p_values.end());
    if (*best > 1.0) throw DataError("no ratio has values in both classes");
    kept.push_back(static_cast<Ratio>(best - p_values.begin()));
    selection.fallback = true;
  }

  // Correlations among the screened ratios are fixed; compute them once.
  std::vector<std::optional<double>> tau(kept.size() * kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      tau[i * kept.size() + j] = pairwise_tau(rows, kept[i], kept[j]);
    }
  }
  std::vector<bool> alive(kept.size(), true);
  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> worst;
    double worst_tau = 0.0;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < kept.size(); ++j) {
        const auto& t = tau[i * kept.size() + j];
        if (!alive[j] || !t || std::abs(*t) <= options.tau_cap) continue;
        if (!worst || std::abs(*t) > std::abs(worst_tau)) {
          worst = {i, j};
          worst_tau = *t;
        }
      }
    }
    if (!worst) break;
    const auto [i, j] = *worst;
    // j is later in canonical order, so it loses ties.
    const bool drop_first = p_values[index_of(kept[i])] > p_values[index_of(kept[j])];
    const std::size_t dropped = drop_first ? i : j;
    const std::size_t survivor = drop_first ? j : i;
    alive[dropped] = false;
    selection.pruned.push_back({kept[dropped], kept[survivor], worst_tau});
  }
  for (std::size_t i = 0; i < kept.size(); ++i) {
    if (alive[i]) selection.selected.push_back(kept[i]);
  }
  return selection;
}

namespace {

using R = Ratio;

// Column order follows the Industry enum.
constexpr std::array<std::array<int, kIndustryCount>, kRatioCount> kPublishedSigns{{
    /* TLTA   */ {0, +1, -1, 0, 0, +1, 0, 0},
    /* TLTE   */ {0, +1, +1, 0, 0, +1, 0, 0},
    /* LTDTA  */ {0, +1, 0, 0, 0, +1, 0, +1},
    /* NITA   */ {0, 0, -1, 0, 0, 0, 0, 0},
    /* RETA   */ {0, +1, -1, +1, +1, +1, +1, +1},
    /* EBITTA */ {+1, +1, +1, 0, 0, 0, +1, +1},
    /* WCTA   */ {0, 0, 0, 0, 0, 0, 0, 0},
    /* CATA   */ {0, 0, -1, 0, +1, 0, 0, -1},
    /* CACL   */ {-1, -1, -1, 0, 0, 0, -1, -1},
    /* CHNI   */ {0, 0, 0, 0, 0, -1, 0, 0},
    /* CFFONI */ {0, 0, -1, 0, 0, 0, 0, 0},
    /* RVSA   */ {0, -1, -1, 0, 0, -1, -1, 0},
    /* RVTA   */ {0, +1, 0, 0, 0, 0, 0, 0},
    /* IVSA   */ {-1, 0, 0, -1, 0, 0, 0, +1},
    /* IVTA   */ {0, +1, 0, -1, +1, 0, -1, +1},
    /* IVCA   */ {0, +1, +1, -1, +1, 0, -1, +1},
    /* IVCOGS */ {0, +1, 0, 0, 0, +1, -1, +1},
    /* PYCOGS */ {-1, -1, 0, -1, 0, -1, -1, 0},
    /* SATA   */ {0, +1, 0, -1, 0, -1, -1, -1},
    /* SATE   */ {0, +1, 0, 0, 0, 0, 0, 0},
}};

const std::array<std::vector<Ratio>, kIndustryCount>& preset_sets() {
  static const std::array<std::vector<Ratio>, kIndustryCount> sets{{
      {R::RETA, R::CATA, R::IVSA, R::PYCOGS},
      {R::TLTA, R::TLTE, R::LTDTA, R::RETA, R::CACL, R::RVSA, R::IVTA, R::IVCOGS, R::PYCOGS,
       R::SATA},
      {R::TLTA, R::TLTE, R::RETA, R::CATA, R::CACL, R::RVSA},
      {R::RETA, R::IVSA, R::IVTA, R::PYCOGS, R::SATA},
      {R::RETA, R::CATA, R::IVSA},
      {R::TLTA, R::TLTE, R::LTDTA, R::RETA, R::CFFONI, R::IVCOGS, R::PYCOGS, R::SATA},
      {R::RETA, R::CACL, R::IVSA, R::IVCOGS, R::PYCOGS, R::SATA},
      {R::LTDTA, R::RETA, R::CATA, R::CACL, R::IVSA, R::IVTA, R::IVCOGS, R::SATA},
  }};
  return sets;
}

}  // namespace

FeatureSelection table7_preset(Industry industry) {
  FeatureSelection selection;
  selection.industry = industry;
  selection.provenance = SelectionProvenance::Table7Preset;
  selection.selected = preset_sets()[index_of(industry)];
  return selection;
}

Direction published_sign(Industry industry, Ratio ratio) {
  return static_cast<Direction>(kPublishedSigns[index_of(ratio)][index_of(industry)]);
}

const char* provenance_name(SelectionProvenance provenance) {
  return provenance == SelectionProvenance::Computed ? "computed" : "table7_preset";
}

}  // namespace fraudscope
