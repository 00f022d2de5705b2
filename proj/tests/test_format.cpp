#include <cmath>
#include <limits>

#include "doctest.h"
#include "pgrav/format.hpp"

using namespace pgrav;

TEST_CASE("format emits shortest round-trip forms") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(-2.5) == "-2.5");
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("format and parse round-trip binary64 exactly") {
  const double values[] = {0.0,
                           -0.0,
                           1.0 / 3.0,
                           9.933538755000969e-05,
                           1.4261649760897786e-44,
                           -6.02214076e23,
                           std::numeric_limits<double>::denorm_min(),
                           std::numeric_limits<double>::max()};
  for (const double v : values) {
    const auto back = parse_double(format_double(v));
    REQUIRE(back.has_value());
    CHECK(*back == v);
  }
}

TEST_CASE("parse accepts plain scientific forms") {
  CHECK(parse_double("1.5e3").value() == doctest::Approx(1500.0));
  CHECK(parse_double("-0.25").value() == doctest::Approx(-0.25));
  CHECK(parse_double("42").value() == doctest::Approx(42.0));
}

TEST_CASE("parse rejects malformed text") {
  CHECK_FALSE(parse_double("").has_value());
  CHECK_FALSE(parse_double("1.5x").has_value());
  CHECK_FALSE(parse_double("1,5").has_value());
  CHECK_FALSE(parse_double(" 1").has_value());
  CHECK_FALSE(parse_double("nanx").has_value());
}
