#include "ppm/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ppm {

std::string format_decimal(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("cannot format a non-finite value");
  }
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  std::string out(buf.data(), end);
  if (out == "-0") out = "0";
  return out;
}

std::string format_percent(double fraction, int decimals) {
  if (decimals < 0 || decimals > 20) throw std::invalid_argument("unsupported precision");
  if (!std::isfinite(fraction)) {
    throw std::invalid_argument("cannot format a non-finite value");
  }
  bool negative = std::signbit(fraction) && fraction != 0.0;
  // Exact decimal expansion of the double, then decimal half-up at the
  // (decimals + 2)th fractional digit.
  std::array<char, 512> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), std::fabs(fraction),
                                 std::chars_format::fixed, 60);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  std::string digits(buf.data(), end);
  auto dot = digits.find('.');
  std::string int_part = digits.substr(0, dot);
  std::string frac_part = digits.substr(dot + 1);

  // Integer count of percent units at the requested precision, as digits.
  auto keep = static_cast<std::size_t>(decimals) + 2;
  std::string scaled = int_part + frac_part.substr(0, keep);
  bool round_up = frac_part[keep] >= '5';
  if (round_up) {
    int i = static_cast<int>(scaled.size()) - 1;
    while (i >= 0 && scaled[static_cast<std::size_t>(i)] == '9') {
      scaled[static_cast<std::size_t>(i)] = '0';
      --i;
    }
    if (i < 0) {
      scaled.insert(scaled.begin(), '1');
    } else {
      ++scaled[static_cast<std::size_t>(i)];
    }
  }
  auto first = scaled.find_first_not_of('0');
  scaled = first == std::string::npos ? "0" : scaled.substr(first);
  auto d = static_cast<std::size_t>(decimals);
  while (scaled.size() < d + 1) scaled.insert(scaled.begin(), '0');
  std::string out = scaled.substr(0, scaled.size() - d);
  if (d > 0) out += "." + scaled.substr(scaled.size() - d);
  if (negative && out.find_first_not_of("0.") != std::string::npos) out.insert(out.begin(), '-');
  return out + "%";
}

std::optional<double> parse_double(std::string_view text) {
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace ppm
