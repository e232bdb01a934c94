#include "fraudscope/industry.hpp"

namespace fraudscope {

namespace {

struct IndustryInfo {
  Industry industry;
  SicRange range;
  std::string_view label;
  std::string_view slug;
};

constexpr std::array<IndustryInfo, kIndustryCount> kIndustries{{
    {Industry::Agriculture, {100, 999}, "Agriculture, Forestry and Fishing", "agriculture"},
    {Industry::MiningConstruction, {1000, 1799}, "Mining and Construction", "mining_construction"},
    {Industry::Manufacturing, {2000, 3999}, "Manufacturing", "manufacturing"},
    {Industry::Transportation, {4000, 4999},
     "Transportation, Communications, Electric, Gas and Sanitary Service", "transportation"},
    {Industry::Trade, {5000, 5999}, "Wholesale Trade and Retail Trade", "trade"},
    {Industry::Finance, {6000, 6799}, "Finance, Insurance and Real Estate", "finance"},
    {Industry::Services, {7000, 8999}, "Services", "services"},
    {Industry::PublicAdministration, {9100, 9729}, "Public Administration",
     "public_administration"},
}};

constexpr std::array<Industry, kIndustryCount> kAll{
    Industry::Agriculture, Industry::MiningConstruction, Industry::Manufacturing,
    Industry::Transportation, Industry::Trade, Industry::Finance,
    Industry::Services, Industry::PublicAdministration};

}  // namespace

const std::array<Industry, kIndustryCount>& all_industries() { return kAll; }

SicRange sic_range(Industry industry) { return kIndustries[index_of(industry)].range; }

std::optional<Industry> map_sic_to_industry(int sic_code) {
  for (const auto& info : kIndustries) {
    if (sic_code >= info.range.first && sic_code <= info.range.last) return info.industry;
  }
  return std::nullopt;
}

std::string_view industry_label(Industry industry) { return kIndustries[index_of(industry)].label; }

std::string_view industry_slug(Industry industry) { return kIndustries[index_of(industry)].slug; }

std::optional<Industry> industry_from_slug(std::string_view slug) {
  for (const auto& info : kIndustries) {
    if (info.slug == slug) return info.industry;
  }
  return std::nullopt;
}

}  // namespace fraudscope
