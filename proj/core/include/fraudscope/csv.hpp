#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fraudscope::csv {

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes. Returns nullopt on an unterminated quote.
std::optional<std::vector<std::string>> split_line(std::string_view line);

/// Quotes a field only when it contains a comma, quote or newline.
std::string escape(std::string_view field);

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double value);

/// Strict full-field parses; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

/// Strips a trailing '\r' left by CRLF files.
std::string_view trim_cr(std::string_view line);

}  // namespace fraudscope::csv
