#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace eventcrawl {

/// RFC 4180 quoting: fields containing a comma, quote or line break are quoted.
std::string csv_field(std::string_view value);

void write_csv_row(std::ostream& out, std::initializer_list<std::string_view> fields);

/// Splits one CSV line, honoring quoted fields.
std::vector<std::string> parse_csv_line(std::string_view line);

/// Fixed six-decimal rendering used in every CSV output.
std::string format_real(double value);

}  // namespace eventcrawl
