#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace ppm {

/// Shortest decimal that round-trips to `value`, always in fixed notation
/// ("0.00001", never "1e-05"). Locale-independent.
std::string format_decimal(double value);

/// `fraction` as a percentage, rounded half-up on the exact binary value:
/// 0.432432... -> "43.24%".
std::string format_percent(double fraction, int decimals = 2);

/// Parses a complete decimal or scientific-notation number. Locale-independent.
std::optional<double> parse_double(std::string_view text);

}  // namespace ppm
