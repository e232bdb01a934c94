#include "fraudscope/synth.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>

#include "fraudscope/random.hpp"
#include "fraudscope/stats.hpp"

namespace fraudscope {

namespace {

using LI = LineItem;

struct ItemModel {
  double log_share;  // log of the typical item / total assets
  double sigma;
};

// Items not listed here are total assets, COGS and payables, which are built
// separately.
std::optional<ItemModel> item_model(LineItem item) {
  switch (item) {
    case LI::TotalLiabilities: return ItemModel{std::log(0.55), 0.30};
    case LI::TotalEquity: return ItemModel{std::log(0.45), 0.40};
    case LI::LongTermDebt: return ItemModel{std::log(0.20), 0.60};
    case LI::NetIncome: return ItemModel{std::log(0.05), 0.80};
    case LI::RetainedEarnings: return ItemModel{std::log(0.20), 0.70};
    case LI::Ebit: return ItemModel{std::log(0.08), 0.70};
    case LI::CurrentAssets: return ItemModel{std::log(0.45), 0.30};
    case LI::CurrentLiabilities: return ItemModel{std::log(0.30), 0.35};
    case LI::Cash: return ItemModel{std::log(0.08), 0.70};
    case LI::CashFlowOps: return ItemModel{std::log(0.07), 0.70};
    case LI::Receivables: return ItemModel{std::log(0.15), 0.50};
    case LI::Inventory: return ItemModel{std::log(0.12), 0.60};
    case LI::Sales: return ItemModel{std::log(1.00), 0.50};
    default: return std::nullopt;
  }
}

constexpr double kCogsShare = 0.65;
constexpr double kCogsSigma = 0.15;
constexpr double kPayablesLogShare = -2.120263536200091;  // log(0.12), of COGS
constexpr double kPayablesSigma = 0.50;
constexpr double kAssetSigma = 1.2;

double log_asset_base(Industry industry) {
  constexpr std::array<double, kIndustryCount> base{18.0, 19.5, 20.0, 20.5, 19.5, 21.5, 19.0, 18.5};
  return base[index_of(industry)];
}

double item_sigma(LineItem item) {
  if (item == LI::Payables) return kPayablesSigma;
  if (item == LI::Cogs) return kCogsSigma;
  if (const auto m = item_model(item)) return m->sigma;
  return kAssetSigma;
}

using Shifts = std::array<double, kLineItemCount>;  // in log units

Shifts fraud_shifts(const SynthConfig& config) {
  Shifts shift{};
  std::array<bool, kLineItemCount> taken{};
  for (auto ratio : all_ratios()) {
    bool informative = false;
    for (auto r : config.informative_ratios) informative = informative || r == ratio;
    if (!informative) continue;
    const auto item = numerator_item(ratio);
    const auto i = static_cast<std::size_t>(item);
    if (taken[i]) continue;
    taken[i] = true;
    const auto sign = published_sign(config.industry, ratio);
    const double dir = sign == Direction::Negative ? -1.0 : 1.0;
    shift[i] = dir * config.separation * item_sigma(item);
  }
  return shift;
}

RawStatement draw_statement(Rng& rng, Industry industry, int year, int sic, bool fraud, const Shifts& shift) {
  // Every row consumes the same number of draws so rows never shift each
  // other's streams.
  std::array<double, kLineItemCount> eps{};
  for (auto& e : eps) e = rng.normal();
  const auto noise = [&](LineItem item) {
    const auto i = static_cast<std::size_t>(item);
    return item_sigma(item) * eps[i] + (fraud ? shift[i] : 0.0);
  };

  RawStatement s;
  s.fiscal_year = year;
  s.sic_code = sic;
  s.fraud = fraud;
  const double log_ta = log_asset_base(industry) + kAssetSigma * eps[static_cast<std::size_t>(LI::TotalAssets)];
  s[LI::TotalAssets] = std::exp(log_ta);
  for (auto item : all_line_items()) {
    if (const auto m = item_model(item)) s[item] = std::exp(log_ta + m->log_share + noise(item));
  }
  s[LI::Cogs] = *s[LI::Sales] * kCogsShare * std::exp(noise(LI::Cogs));
  s[LI::Payables] = *s[LI::Cogs] * std::exp(kPayablesLogShare + noise(LI::Payables));
  return s;
}

}  // namespace

std::vector<RawStatement> generate_dataset(const SynthConfig& config) {
  if (config.n_per_class < 1) throw std::invalid_argument("synth: n_per_class must be at least 1");
  if (config.controls_per_fraud < 1) throw std::invalid_argument("synth: controls_per_fraud must be at least 1");
  if (!(config.separation >= 0.0) || !std::isfinite(config.separation)) {
    throw std::invalid_argument("synth: separation must be a nonnegative number");
  }
  if (config.separation > 0.0 && config.informative_ratios.empty()) {
    throw std::invalid_argument("synth: informative ratios required when separation > 0");
  }
  if (config.first_year > config.last_year) throw std::invalid_argument("synth: empty year range");

  const Shifts shift = fraud_shifts(config);
  const auto range = sic_range(config.industry);
  const auto years = static_cast<std::uint64_t>(config.last_year - config.first_year + 1);
  const auto codes = static_cast<std::uint64_t>(range.last - range.first + 1);
  Rng rng(derive_seed(config.seed, "synth", index_of(config.industry)));

  std::vector<RawStatement> out;
  out.reserve(config.n_per_class * (1 + config.controls_per_fraud));
  char id[48];
  for (std::size_t i = 0; i < config.n_per_class; ++i) {
    const int year = config.first_year + static_cast<int>(rng.below(years));
    for (std::size_t c = 0; c <= config.controls_per_fraud; ++c) {
      const bool fraud = c == 0;
      const int sic = range.first + static_cast<int>(rng.below(codes));
      auto s = draw_statement(rng, config.industry, year, sic, fraud, shift);
      if (fraud) {
        std::snprintf(id, sizeof id, "FRAUD-%05zu", i + 1);
      } else {
        std::snprintf(id, sizeof id, "CTRL-%05zu-%zu", i + 1, c);
      }
      s.company_id = id;
      out.push_back(std::move(s));
    }
  }
  return out;
}

}  // namespace fraudscope
