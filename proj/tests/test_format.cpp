#include <doctest.h>

#include "ppm/format.hpp"

using ppm::format_decimal;
using ppm::format_percent;
using ppm::parse_double;

TEST_CASE("percentages round half-up to two decimals") {
  CHECK(format_percent(0.16) == "16.00%");
  CHECK(format_percent(1.0) == "100.00%");
  CHECK(format_percent(0.0) == "0.00%");
  CHECK(format_percent(4.0 / 9.25) == "43.24%");
  CHECK(format_percent(3.0 / 23.125) == "12.97%");
  CHECK(format_percent(2.0 / 3.0) == "66.67%");
  CHECK(format_percent(0.99999) == "100.00%");
  CHECK(format_percent(0.00004) == "0.00%");
  CHECK(format_percent(0.00005) == "0.01%");
  // 0.125 and 0.5 are exact in binary: ties go up.
  CHECK(format_percent(0.000125) == "0.01%");
  CHECK(format_percent(0.5) == "50.00%");
}

TEST_CASE("decimals are shortest round-trip and never scientific") {
  CHECK(format_decimal(25.0) == "25");
  CHECK(format_decimal(12.5) == "12.5");
  CHECK(format_decimal(0.00001) == "0.00001");
  CHECK(format_decimal(1e20) == "100000000000000000000");
  CHECK(format_decimal(-0.0) == "0");
  for (double v : {0.1, 1.0 / 3.0, 160.0 / 700.0, 1e-300, 6.02214076e23}) {
    auto text = format_decimal(v);
    CHECK(text.find('e') == std::string::npos);
    CHECK(parse_double(text) == v);
  }
}

TEST_CASE("parse_double accepts scientific input and rejects junk") {
  CHECK(parse_double("1e3") == 1000.0);
  CHECK(parse_double("+2.5") == 2.5);
  CHECK(parse_double("-4") == -4.0);
  CHECK_FALSE(parse_double(""));
  CHECK_FALSE(parse_double("12abc"));
  CHECK_FALSE(parse_double("1,5"));
  CHECK_FALSE(parse_double(" 3"));
}

TEST_CASE("format_percent precision") {
  CHECK(format_percent(160.0 / 700.0, 0) == "23%");
  CHECK(format_percent(0.08, 0) == "8%");
  CHECK(format_percent(0.995, 0) == "99%");
  CHECK(format_percent(0.0, 0) == "0%");
  CHECK(format_percent(0.123456, 3) == "12.346%");
  CHECK(format_percent(-0.001, 0) == "0%");
  CHECK_THROWS(format_percent(0.5, -1));
}
