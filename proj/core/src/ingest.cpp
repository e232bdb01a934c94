#include "fraudscope/ingest.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "fraudscope/csv.hpp"
#include "fraudscope/error.hpp"

namespace fraudscope {

namespace {

constexpr std::array<std::string_view, kLineItemCount> kColumns{
    "total_assets", "total_liabilities", "total_equity",        "long_term_debt",
    "net_income",   "retained_earnings", "ebit",                "current_assets",
    "current_liabilities", "cash",       "cash_flow_ops",       "receivables",
    "inventory",    "cogs",              "payables",            "sales"};

constexpr std::string_view kHeader =
    "company_id,fiscal_year,sic_code,fraud_label,total_assets,total_liabilities,total_equity,"
    "long_term_debt,net_income,retained_earnings,ebit,current_assets,current_liabilities,cash,"
    "cash_flow_ops,receivables,inventory,cogs,payables,sales";

constexpr std::size_t kFieldCount = 4 + kLineItemCount;

const std::array<LineItem, kLineItemCount> kAllItems = [] {
  std::array<LineItem, kLineItemCount> items{};
  for (std::size_t i = 0; i < kLineItemCount; ++i) items[i] = static_cast<LineItem>(i);
  return items;
}();

// Returns the rejection reason, or an empty string when the row is valid.
std::string parse_row(const std::vector<std::string>& fields, const IngestOptions& options,
                      RawStatement& out) {
  if (fields.size() != kFieldCount) {
    std::ostringstream msg;
    msg << "expected " << kFieldCount << " fields, found " << fields.size();
    return msg.str();
  }
  if (fields[0].empty()) return "missing company_id";
  out.company_id = fields[0];

  const auto year = csv::parse_integer(fields[1]);
  if (!year) return "invalid fiscal_year '" + fields[1] + "'";
  if (*year < options.first_year || *year > options.last_year) {
    std::ostringstream msg;
    msg << "fiscal_year " << *year << " outside study window [" << options.first_year << ", "
        << options.last_year << "]";
    return msg.str();
  }
  out.fiscal_year = static_cast<int>(*year);

  const auto sic = csv::parse_integer(fields[2]);
  if (!sic) return "invalid sic_code '" + fields[2] + "'";
  if (!map_sic_to_industry(static_cast<int>(*sic))) {
    return "unmapped SIC " + fields[2];
  }
  out.sic_code = static_cast<int>(*sic);

  if (fields[3] == "1") {
    out.fraud = true;
  } else if (fields[3] == "0") {
    out.fraud = false;
  } else {
    return "fraud_label must be 0 or 1, found '" + fields[3] + "'";
  }

  for (std::size_t i = 0; i < kLineItemCount; ++i) {
    const std::string& cell = fields[4 + i];
    if (cell.empty()) {
      out.items[i].reset();
      continue;
    }
    const auto value = csv::parse_double(cell);
    if (!value) return "invalid number in " + std::string(kColumns[i]) + " '" + cell + "'";
    out.items[i] = *value;
  }
  return {};
}

}  // namespace

std::string_view line_item_column(LineItem item) { return kColumns[static_cast<std::size_t>(item)]; }

const std::array<LineItem, kLineItemCount>& all_line_items() { return kAllItems; }

Industry RawStatement::industry() const {
  const auto industry = map_sic_to_industry(sic_code);
  if (!industry) throw DataError("unmapped SIC " + std::to_string(sic_code));
  return *industry;
}

std::string_view statement_header() { return kHeader; }

IngestResult parse_statements(std::istream& in, const IngestOptions& options) {
  if (!in) throw DataError("unreadable input stream");
  std::string line;
  if (!std::getline(in, line)) {
    if (in.bad()) throw DataError("unreadable input stream");
    throw DataError("missing CSV header");
  }
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  if (csv::trim_cr(line) != kHeader) {
    throw DataError("unexpected CSV header; expected: " + std::string(kHeader));
  }

  IngestResult result;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string_view text = csv::trim_cr(line);
    if (text.empty()) continue;
    ++result.data_rows;
    const auto fields = csv::split_line(text);
    if (!fields) {
      result.rejections.push_back({line_number, "unterminated quoted field"});
      continue;
    }
    RawStatement statement;
    std::string reason = parse_row(*fields, options, statement);
    if (reason.empty()) {
      result.statements.push_back(std::move(statement));
    } else {
      result.rejections.push_back({line_number, std::move(reason)});
    }
  }
  if (in.bad()) throw DataError("read error in input stream");
  return result;
}

void write_statements(std::ostream& out, std::span<const RawStatement> statements) {
  out << kHeader << '\n';
  for (const auto& s : statements) {
    out << csv::escape(s.company_id) << ',' << s.fiscal_year << ',' << s.sic_code << ','
        << (s.fraud ? '1' : '0');
    for (const auto& item : s.items) {
      out << ',';
      if (item) out << csv::format_double(*item);
    }
    out << '\n';
  }
}

void write_rejections(std::ostream& out, std::span<const Rejection> rejections) {
  out << "line,reason\n";
  for (const auto& r : rejections) out << r.line << ',' << csv::escape(r.reason) << '\n';
}

}  // namespace fraudscope
