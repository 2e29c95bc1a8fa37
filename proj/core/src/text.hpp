#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lad::text {

/// Shortest fixed-notation text that parses back to the same double.
std::string format_number(double value);

/// Whole-string decimal parse; nullopt on any trailing junk.
std::optional<double> parse_number(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

std::string_view trim(std::string_view text);

/// Splits one delimited line. Fields may be double-quoted; "" is an escaped
/// quote inside a quoted field.
std::vector<std::string> split_delimited(std::string_view line, char delimiter);
/// Quotes a field when it contains the delimiter, a quote or a newline.
std::string quote_field(std::string_view field, char delimiter);

std::string to_lower(std::string_view text);

}  // namespace lad::text
