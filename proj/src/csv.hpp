#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ppm::detail {

struct CsvRecord {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

/// RFC 4180 reader: quoted fields may contain commas, quotes ("") and
/// newlines. CRLF and LF line endings are accepted; blank lines are skipped.
std::vector<CsvRecord> parse_csv(std::string_view text, std::string_view source);

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view value);

std::string csv_row(const std::vector<std::string>& fields);

}  // namespace ppm::detail
