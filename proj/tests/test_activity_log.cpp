#include "doctest.h"

#include <sstream>
#include <string>

#include "hos/activity_log.hpp"
#include "hos/time.hpp"

using namespace hos;

namespace {

std::vector<DriverLog> parse(const std::string& csv, bool fill_gaps = false) {
  std::istringstream in(csv);
  ParseOptions options;
  options.fill_gaps = fill_gaps;
  return parse_log(in, options);
}

}  // namespace

TEST_CASE("timestamps parse in both accepted forms and format canonically") {
  CHECK(parse_timestamp("11/01/2017 17:33") == parse_timestamp("2017-01-11T17:33"));
  CHECK(format_timestamp(parse_timestamp("11/01/2017 17:33")) == "2017-01-11T17:33");
  CHECK(format_timestamp(parse_timestamp("02/01/2017 00:00")) == "2017-01-02T00:00");
  // day boundaries around a leap year
  CHECK(format_timestamp(parse_timestamp("29/02/2016 23:59") + 1) == "2016-03-01T00:00");
  CHECK_THROWS_AS(parse_timestamp("31/02/2017 10:00"), std::invalid_argument);
  CHECK_THROWS_AS(parse_timestamp("2017-01-11 17:33"), std::invalid_argument);
  CHECK_THROWS_AS(parse_timestamp("11/01/2017"), std::invalid_argument);
}

TEST_CASE("a well-formed log parses into per-driver sorted records") {
  auto logs = parse(
      "Driver,Start,End,Duration,Activity\n"
      "b,02/01/2017 01:00,02/01/2017 02:00,60,Other\n"
      "a,02/01/2017 00:00,02/01/2017 01:30,90,Driving\n"
      "b,02/01/2017 00:00,02/01/2017 01:00,60,Driving\n"
      "a,02/01/2017 01:30,02/01/2017 02:00,30,Break\n");
  REQUIRE(logs.size() == 2);
  CHECK(logs[0].driver_id == "a");
  CHECK(logs[1].driver_id == "b");
  REQUIRE(logs[0].records.size() == 2);
  CHECK(logs[0].records[0].kind == ActivityKind::Driving);
  CHECK(logs[0].records[0].duration_min == 90);
  CHECK(logs[1].records[0].end == logs[1].records[1].start);
}

TEST_CASE("validation failures carry the offending row number") {
  SUBCASE("duration disagreeing with the interval") {
    try {
      parse(
          "Driver,Start,End,Duration,Activity\n"
          "a,02/01/2017 00:00,02/01/2017 01:00,61,Driving\n");
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.row() == 2);
      CHECK(e.driver() == "a");
    }
  }
  SUBCASE("unknown activity kind") {
    CHECK_THROWS_AS(parse("Driver,Start,End,Duration,Activity\n"
                          "a,02/01/2017 00:00,02/01/2017 01:00,60,Sleeping\n"),
                    InputError);
  }
  SUBCASE("overlapping records") {
    try {
      parse(
          "Driver,Start,End,Duration,Activity\n"
          "a,02/01/2017 00:00,02/01/2017 01:00,60,Driving\n"
          "a,02/01/2017 00:30,02/01/2017 01:30,60,Break\n");
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(e.row() == 3);
    }
  }
  SUBCASE("bad header") {
    CHECK_THROWS_AS(parse("Who,Start,End,Duration,Activity\n"), InputError);
  }
  SUBCASE("non-positive duration") {
    CHECK_THROWS_AS(parse("Driver,Start,End,Duration,Activity\n"
                          "a,02/01/2017 00:00,02/01/2017 00:00,0,Driving\n"),
                    InputError);
  }
}

TEST_CASE("a timeline gap is an error unless gap filling is on") {
  const std::string csv =
      "Driver,Start,End,Duration,Activity\n"
      "a,02/01/2017 00:00,02/01/2017 01:00,60,Driving\n"
      "a,02/01/2017 02:00,02/01/2017 03:00,60,Break\n";
  CHECK_THROWS_AS(parse(csv), InputError);

  auto logs = parse(csv, /*fill_gaps=*/true);
  REQUIRE(logs.size() == 1);
  REQUIRE(logs[0].records.size() == 3);
  CHECK(logs[0].records[1].kind == ActivityKind::Idle);
  CHECK(logs[0].records[1].duration_min == 60);
  CHECK(logs[0].records[1].start == logs[0].records[0].end);
  CHECK(logs[0].records[1].end == logs[0].records[2].start);
}

TEST_CASE("serialize and parse round-trip") {
  auto logs = parse(
      "Driver,Start,End,Duration,Activity\n"
      "a,02/01/2017 00:00,02/01/2017 01:30,90,Driving\n"
      "a,02/01/2017 01:30,02/01/2017 02:15,45,Break\n");
  std::ostringstream out;
  serialize(logs, out);
  auto again = parse(out.str());
  CHECK(again == logs);
  // canonical timestamps in the output
  CHECK(out.str().find("2017-01-02T00:00") != std::string::npos);
}

TEST_CASE("merge_contiguous collapses same-kind runs and keeps boundaries") {
  auto logs = parse(
      "Driver,Start,End,Duration,Activity\n"
      "a,02/01/2017 00:00,02/01/2017 00:30,30,Driving\n"
      "a,02/01/2017 00:30,02/01/2017 01:00,30,Driving\n"
      "a,02/01/2017 01:00,02/01/2017 01:45,45,Break\n"
      "a,02/01/2017 01:45,02/01/2017 02:00,15,Driving\n");
  DriverLog merged = merge_contiguous(logs[0]);
  REQUIRE(merged.records.size() == 3);
  CHECK(merged.records[0].duration_min == 60);
  CHECK(merged.records[0].kind == ActivityKind::Driving);
  CHECK(merged.records[1].kind == ActivityKind::Break);
  CHECK(merged.records[2].duration_min == 15);
  CHECK(merged.records[0].end == merged.records[1].start);
}

TEST_CASE("empty input yields no drivers") {
  CHECK(parse("Driver,Start,End,Duration,Activity\n").empty());
}
