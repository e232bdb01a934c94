#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fraudscope/industry.hpp"
#include "fraudscope/ingest.hpp"

namespace fraudscope {

/// The twenty financial ratios, in their canonical (leverage, profitability,
/// liquidity, efficiency) order.
enum class Ratio : std::uint8_t {
  TLTA,
  TLTE,
  LTDTA,
  NITA,
  RETA,
  EBITTA,
  WCTA,
  CATA,
  CACL,
  CHNI,
  CFFONI,
  RVSA,
  RVTA,
  IVSA,
  IVTA,
  IVCA,
  IVCOGS,
  PYCOGS,
  SATA,
  SATE,
};

inline constexpr std::size_t kRatioCount = 20;

const std::array<Ratio, kRatioCount>& all_ratios();
std::string_view ratio_name(Ratio ratio);
std::optional<Ratio> ratio_from_name(std::string_view name);
inline std::size_t index_of(Ratio ratio) { return static_cast<std::size_t>(ratio); }

/// Line item in the numerator of a ratio (current assets for WCTA, whose
/// numerator is working capital).
LineItem numerator_item(Ratio ratio);
LineItem denominator_item(Ratio ratio);

struct RatioVector {
  std::array<std::optional<double>, kRatioCount> values{};

  const std::optional<double>& operator[](Ratio r) const { return values[index_of(r)]; }
  std::optional<double>& operator[](Ratio r) { return values[index_of(r)]; }
  std::size_t present_count() const;

  friend bool operator==(const RatioVector&, const RatioVector&) = default;
};

/// A slot is missing iff an operand is missing or the denominator is zero.
/// WCTA uses (current_assets - current_liabilities) / total_assets.
RatioVector compute_ratios(const RawStatement& statement);

/// Ratio vector plus identifiers and the fraud label: the modelling unit.
struct Observation {
  std::string company_id;
  int fiscal_year = 0;
  Industry industry = Industry::Agriculture;
  RatioVector ratios;
  bool fraud = false;

  friend bool operator==(const Observation&, const Observation&) = default;
};

std::vector<Observation> make_observations(std::span<const RawStatement> statements);

/// Observation CSV: company_id,fiscal_year,industry,label,TLTA,...,SATE with
/// blank = missing. Values are written in shortest round-trip form.
void write_observations(std::ostream& out, std::span<const Observation> observations);
/// Throws DataError on any malformed line.
std::vector<Observation> read_observations(std::istream& in);

}  // namespace fraudscope
