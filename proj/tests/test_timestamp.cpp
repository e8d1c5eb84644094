#include <doctest.h>

#include "medsgraph/timestamp.hpp"

using medsgraph::MicroTimestamp;
using medsgraph::format_timestamp;
using medsgraph::parse_timestamp;

TEST_SUITE("timestamp") {

TEST_CASE("epoch and canonical form") {
  CHECK(format_timestamp(MicroTimestamp(0)) == "1970-01-01T00:00:00Z");
  CHECK(parse_timestamp("1970-01-01T00:00:00Z")->micros() == 0);
  CHECK(parse_timestamp("1970-01-01T00:00:00")->micros() == 0);
  CHECK(parse_timestamp("1970-01-01 00:00:00Z")->micros() == 0);
}

TEST_CASE("fractional seconds parse, truncate, and trim") {
  CHECK(parse_timestamp("1970-01-01T00:00:00.5Z")->micros() == 500000);
  CHECK(parse_timestamp("1970-01-01T00:00:00.000001Z")->micros() == 1);
  // Nanoseconds truncate past microsecond precision.
  CHECK(parse_timestamp("1970-01-01T00:00:00.0000019Z")->micros() == 1);
  CHECK(format_timestamp(MicroTimestamp(500000)) == "1970-01-01T00:00:00.5Z");
  CHECK(format_timestamp(MicroTimestamp(1)) == "1970-01-01T00:00:00.000001Z");
  CHECK(format_timestamp(MicroTimestamp(1500000)) ==
        "1970-01-01T00:00:01.5Z");
}

TEST_CASE("offsets normalize to UTC") {
  CHECK(parse_timestamp("1970-01-01T01:00:00+01:00")->micros() == 0);
  CHECK(parse_timestamp("1969-12-31T23:00:00-01:00")->micros() == 0);
  CHECK(format_timestamp(*parse_timestamp("2024-06-01T12:30:00+05:30")) ==
        "2024-06-01T07:00:00Z");
}

TEST_CASE("pre-epoch values") {
  const auto t = parse_timestamp("1969-12-31T23:59:59.75Z");
  REQUIRE(t.has_value());
  CHECK(t->micros() == -250000);
  CHECK(format_timestamp(*t) == "1969-12-31T23:59:59.75Z");
}

TEST_CASE("calendar validation") {
  CHECK(!parse_timestamp("2023-02-29T00:00:00Z").has_value());
  CHECK(parse_timestamp("2024-02-29T00:00:00Z").has_value());  // leap year
  CHECK(parse_timestamp("2000-02-29T00:00:00Z").has_value());
  CHECK(!parse_timestamp("1900-02-29T00:00:00Z").has_value());
  CHECK(!parse_timestamp("2024-13-01T00:00:00Z").has_value());
  CHECK(!parse_timestamp("2024-00-01T00:00:00Z").has_value());
  CHECK(!parse_timestamp("2024-04-31T00:00:00Z").has_value());
  CHECK(!parse_timestamp("2024-01-01T24:00:00Z").has_value());
  CHECK(!parse_timestamp("2024-01-01T00:60:00Z").has_value());
  CHECK(!parse_timestamp("2024-01-01T00:00:60Z").has_value());
}

TEST_CASE("malformed inputs rejected") {
  CHECK(!parse_timestamp("").has_value());
  CHECK(!parse_timestamp("2024-01-01").has_value());
  CHECK(!parse_timestamp("2024-1-01T00:00:00Z").has_value());
  CHECK(!parse_timestamp("2024-01-01T00:00:00ZX").has_value());
  CHECK(!parse_timestamp("2024-01-01T00:00:00.").has_value());
  CHECK(!parse_timestamp("2024-01-01T00:00:00+0100").has_value());
  CHECK(!parse_timestamp("not a time").has_value());
}

TEST_CASE("format/parse round trip across the supported range") {
  for (const int64_t micros :
       {int64_t{0}, int64_t{-1}, int64_t{1}, int64_t{1704067200000000},
        int64_t{-62135596800000000},    // 0001-01-01
        int64_t{253402300799999999}}) {  // 9999-12-31T23:59:59.999999
    const std::string text = format_timestamp(MicroTimestamp(micros));
    const auto back = parse_timestamp(text);
    REQUIRE(back.has_value());
    CHECK(back->micros() == micros);
  }
  CHECK(format_timestamp(MicroTimestamp(-62135596800000000)) ==
        "0001-01-01T00:00:00Z");
}

TEST_CASE("ordering follows instants") {
  CHECK(*parse_timestamp("2024-01-01T00:00:00Z") <
        *parse_timestamp("2024-01-01T00:00:01Z"));
  CHECK(*parse_timestamp("2024-01-01T01:00:00+01:00") ==
        *parse_timestamp("2024-01-01T00:00:00Z"));
}

}  // TEST_SUITE
