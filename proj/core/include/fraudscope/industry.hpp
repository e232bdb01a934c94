#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace fraudscope {

/// The eight SIC industry groups used for per-industry analysis.
enum class Industry : std::uint8_t {
  Agriculture,
  MiningConstruction,
  Manufacturing,
  Transportation,
  Trade,
  Finance,
  Services,
  PublicAdministration,
};

inline constexpr std::size_t kIndustryCount = 8;

struct SicRange {
  int first;
  int last;
};

const std::array<Industry, kIndustryCount>& all_industries();

/// Inclusive SIC range covered by an industry.
SicRange sic_range(Industry industry);

/// Returns the unique industry whose range contains the code, or nullopt for
/// codes in the gaps (e.g. 1800-1999, 9000-9099) or outside [100, 9729].
std::optional<Industry> map_sic_to_industry(int sic_code);

/// Long display label, e.g. "Finance, Insurance and Real Estate".
std::string_view industry_label(Industry industry);
/// Stable machine slug, e.g. "finance". Used in file names and CSV columns.
std::string_view industry_slug(Industry industry);
std::optional<Industry> industry_from_slug(std::string_view slug);

inline std::size_t index_of(Industry industry) { return static_cast<std::size_t>(industry); }

}  // namespace fraudscope
