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

namespace fraudscope {

/// Monetary line items of a statement, in CSV column order.
enum class LineItem : std::uint8_t {
  TotalAssets,
  TotalLiabilities,
  TotalEquity,
  LongTermDebt,
  NetIncome,
  RetainedEarnings,
  Ebit,
  CurrentAssets,
  CurrentLiabilities,
  Cash,
  CashFlowOps,
  Receivables,
  Inventory,
  Cogs,
  Payables,
  Sales,
};

inline constexpr std::size_t kLineItemCount = 16;

std::string_view line_item_column(LineItem item);
const std::array<LineItem, kLineItemCount>& all_line_items();

/// One company-year of financial-statement data. Missing cells stay missing;
/// zero is a legitimate accounting value.
struct RawStatement {
  std::string company_id;
  int fiscal_year = 0;
  int sic_code = 0;
  bool fraud = false;
  std::array<std::optional<double>, kLineItemCount> items{};

  std::optional<double>& operator[](LineItem item) { return items[static_cast<std::size_t>(item)]; }
  const std::optional<double>& operator[](LineItem item) const {
    return items[static_cast<std::size_t>(item)];
  }

  /// Industry of an accepted statement. Throws if the SIC code is unmapped.
  Industry industry() const;

  friend bool operator==(const RawStatement&, const RawStatement&) = default;
};

struct IngestOptions {
  int first_year = 1990;
  int last_year = 2012;
};

struct Rejection {
  std::size_t line = 0;  // 1-based physical line number, header is line 1
  std::string reason;
};

struct IngestResult {
  std::vector<RawStatement> statements;
  std::vector<Rejection> rejections;
  std::size_t data_rows = 0;  // == statements.size() + rejections.size()
};

/// The exact header line expected by parse_statements.
std::string_view statement_header();

/// Parses and validates statement CSV. Malformed rows become rejections;
/// an unreadable stream or a wrong header throws DataError. Blank lines are
/// not data rows.
IngestResult parse_statements(std::istream& in, const IngestOptions& options = {});

/// Writes statements in the same schema; parse_statements reads them back
/// unchanged.
void write_statements(std::ostream& out, std::span<const RawStatement> statements);

void write_rejections(std::ostream& out, std::span<const Rejection> rejections);

}  // namespace fraudscope
