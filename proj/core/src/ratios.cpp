#include "fraudscope/ratios.hpp"

#include <istream>
#include <ostream>

#include "fraudscope/csv.hpp"
#include "fraudscope/error.hpp"

namespace fraudscope {

namespace {

struct RatioDefinition {
  std::string_view name;
  LineItem numerator;
  LineItem denominator;
};

using LI = LineItem;

constexpr std::array<RatioDefinition, kRatioCount> kDefinitions{{
    {"TLTA", LI::TotalLiabilities, LI::TotalAssets},
    {"TLTE", LI::TotalLiabilities, LI::TotalEquity},
    {"LTDTA", LI::LongTermDebt, LI::TotalAssets},
    {"NITA", LI::NetIncome, LI::TotalAssets},
    {"RETA", LI::RetainedEarnings, LI::TotalAssets},
    {"EBITTA", LI::Ebit, LI::TotalAssets},
    {"WCTA", LI::CurrentAssets, LI::TotalAssets},
    {"CATA", LI::CurrentAssets, LI::TotalAssets},
    {"CACL", LI::CurrentAssets, LI::CurrentLiabilities},
    {"CHNI", LI::Cash, LI::NetIncome},
    {"CFFONI", LI::CashFlowOps, LI::NetIncome},
    {"RVSA", LI::Receivables, LI::Sales},
    {"RVTA", LI::Receivables, LI::TotalAssets},
    {"IVSA", LI::Inventory, LI::Sales},
    {"IVTA", LI::Inventory, LI::TotalAssets},
    {"IVCA", LI::Inventory, LI::CurrentAssets},
    {"IVCOGS", LI::Inventory, LI::Cogs},
    {"PYCOGS", LI::Payables, LI::Cogs},
    {"SATA", LI::Sales, LI::TotalAssets},
    {"SATE", LI::Sales, LI::TotalEquity},
}};

const std::array<Ratio, kRatioCount> kAllRatios = [] {
  std::array<Ratio, kRatioCount> ratios{};
  for (std::size_t i = 0; i < kRatioCount; ++i) ratios[i] = static_cast<Ratio>(i);
  return ratios;
}();

std::optional<double> quotient(const std::optional<double>& num, const std::optional<double>& den) {
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

}  // namespace

const std::array<Ratio, kRatioCount>& all_ratios() { return kAllRatios; }

std::string_view ratio_name(Ratio ratio) { return kDefinitions[index_of(ratio)].name; }

std::optional<Ratio> ratio_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kRatioCount; ++i) {
    if (kDefinitions[i].name == name) return static_cast<Ratio>(i);
  }
  return std::nullopt;
}

LineItem numerator_item(Ratio ratio) { return kDefinitions[index_of(ratio)].numerator; }
LineItem denominator_item(Ratio ratio) { return kDefinitions[index_of(ratio)].denominator; }

std::size_t RatioVector::present_count() const {
  std::size_t n = 0;
  for (const auto& v : values) n += v.has_value();
  return n;
}

RatioVector compute_ratios(const RawStatement& s) {
  RatioVector out;
  for (const Ratio r : kAllRatios) {
    const auto& def = kDefinitions[index_of(r)];
    if (r == Ratio::WCTA) {
      const auto& ca = s[LI::CurrentAssets];
      const auto& cl = s[LI::CurrentLiabilities];
      std::optional<double> working_capital;
      if (ca && cl) working_capital = *ca - *cl;
      out[r] = quotient(working_capital, s[LI::TotalAssets]);
    } else {
      out[r] = quotient(s[def.numerator], s[def.denominator]);
    }
  }
  return out;
}

std::vector<Observation> make_observations(std::span<const RawStatement> statements) {
  std::vector<Observation> out;
  out.reserve(statements.size());
  for (const auto& s : statements) {
    out.push_back({s.company_id, s.fiscal_year, s.industry(), compute_ratios(s), s.fraud});
  }
  return out;
}

void write_observations(std::ostream& out, std::span<const Observation> observations) {
  out << "company_id,fiscal_year,industry,label";
  for (const Ratio r : kAllRatios) out << ',' << ratio_name(r);
  out << '\n';
  for (const auto& o : observations) {
    out << csv::escape(o.company_id) << ',' << o.fiscal_year << ',' << industry_slug(o.industry)
        << ',' << (o.fraud ? '1' : '0');
    for (const auto& v : o.ratios.values) {
      out << ',';
      if (v) out << csv::format_double(*v);
    }
    out << '\n';
  }
}

std::vector<Observation> read_observations(std::istream& in) {
  if (!in) throw DataError("unreadable observation stream");
  std::string line;
  if (!std::getline(in, line)) throw DataError("missing observation header");
  const auto header = csv::split_line(csv::trim_cr(line));
  if (!header || header->size() != 4 + kRatioCount || (*header)[0] != "company_id" ||
      (*header)[2] != "industry" || (*header)[3] != "label") {
    throw DataError("unexpected observation header");
  }
  for (std::size_t i = 0; i < kRatioCount; ++i) {
    if ((*header)[4 + i] != kDefinitions[i].name) throw DataError("unexpected observation header");
  }

  std::vector<Observation> out;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view text = csv::trim_cr(line);
    if (text.empty()) continue;
    const auto fail = [&](std::string_view what) {
      throw DataError("observations line " + std::to_string(line_number) + ": " + std::string(what));
    };
    const auto fields = csv::split_line(text);
    if (!fields || fields->size() != 4 + kRatioCount) fail("wrong field count");
    Observation o;
    o.company_id = (*fields)[0];
    const auto year = csv::parse_integer((*fields)[1]);
    if (!year) fail("invalid fiscal_year");
    o.fiscal_year = static_cast<int>(*year);
    const auto industry = industry_from_slug((*fields)[2]);
    if (!industry) fail("unknown industry '" + (*fields)[2] + "'");
    o.industry = *industry;
    if ((*fields)[3] == "1") {
      o.fraud = true;
    } else if ((*fields)[3] != "0") {
      fail("label must be 0 or 1");
    }
    for (std::size_t i = 0; i < kRatioCount; ++i) {
      const std::string& cell = (*fields)[4 + i];
      if (cell.empty()) continue;
      const auto value = csv::parse_double(cell);
      if (!value) fail("invalid value for " + std::string(kDefinitions[i].name));
      o.ratios.values[i] = *value;
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace fraudscope
