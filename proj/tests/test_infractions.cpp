#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "hos/activity_log.hpp"
#include "hos/infractions.hpp"
#include "hos/labeller.hpp"

using namespace hos;

namespace {

DriverLog parse_one(const std::string& csv) {
  std::istringstream in(csv);
  auto logs = parse_log(in);
  REQUIRE(logs.size() == 1);
  return logs[0];
}

std::vector<Infraction> analyse(const DriverLog& log, std::vector<LabeledActivity>* out = nullptr) {
  auto labels = label_log(log, RegulationParameters{});
  auto found = evaluate_tests(labels, builtin_tests(), RegulationParameters{});
  if (out) *out = labels;
  return found;
}

// Builds one extended driving day (595 minutes) ending in a regular rest.
void add_extended_day(std::ostringstream& csv, Minutes& t) {
  auto add = [&](int dur, const char* kind) {
    csv << "d," << format_timestamp(t) << ',' << format_timestamp(t + dur) << ',' << dur << ','
        << kind << '\n';
    t += dur;
  };
  add(270, "Driving");
  add(45, "Break");
  add(260, "Driving");
  add(45, "Break");
  add(65, "Driving");
  add(660, "Break");
}

}  // namespace

TEST_CASE("a too-long driving run is reported as driving without breaks") {
  std::vector<LabeledActivity> labels;
  auto found = analyse(parse_one("Driver,Start,End,Duration,Activity\n"
                                 "d,02/01/2017 00:00,02/01/2017 04:40,280,Driving\n"
                                 "d,02/01/2017 04:40,02/01/2017 05:25,45,Break\n"
                                 "d,02/01/2017 05:25,02/01/2017 07:05,100,Driving\n"
                                 "d,02/01/2017 07:05,02/01/2017 18:05,660,Break\n"),
                      &labels);
  REQUIRE(found.size() == 1);
  CHECK(found[0].infraction_type == "Excessive Driving without breaks");
  // the finding spans the over-limit run, and the text lands on the rows
  CHECK(found[0].first == 0);
  CHECK(labels[0].infraction == "Excessive Driving without breaks");
  CHECK(labels[2].infraction.empty());  // the re-anchored legal tail is clean
  CHECK(labels[2].contexts.legal);
}

TEST_CASE("day driving over the normal bound with spent extensions") {
  std::ostringstream csv;
  csv << "Driver,Start,End,Duration,Activity\n";
  Minutes t = parse_timestamp("02/01/2017 00:00");
  add_extended_day(csv, t);
  add_extended_day(csv, t);
  // 560 minutes of driving cannot be a third extended day
  auto add = [&](int dur, const char* kind) {
    csv << "d," << format_timestamp(t) << ',' << format_timestamp(t + dur) << ',' << dur << ','
        << kind << '\n';
    t += dur;
  };
  add(270, "Driving");
  add(45, "Break");
  add(265, "Driving");
  add(45, "Break");
  add(25, "Driving");
  add(660, "Break");

  std::vector<LabeledActivity> labels;
  auto found = analyse(parse_one(csv.str()), &labels);
  REQUIRE(found.size() == 1);
  CHECK(found[0].infraction_type == "Surpassed NDD driving time");
  // the whole failed day is spanned
  CHECK(found[0].first == 12);
  CHECK(found[0].last == 17);
  for (int i = 0; i < 12; ++i) CHECK(labels[i].contexts.legal);
}

TEST_CASE("day driving over even the extended bound") {
  std::ostringstream csv;
  csv << "Driver,Start,End,Duration,Activity\n";
  Minutes t = parse_timestamp("02/01/2017 00:00");
  auto add = [&](int dur, const char* kind) {
    csv << "d," << format_timestamp(t) << ',' << format_timestamp(t + dur) << ',' << dur << ','
        << kind << '\n';
    t += dur;
  };
  add(270, "Driving");
  add(45, "Break");
  add(270, "Driving");
  add(45, "Break");
  add(70, "Driving");  // 610 driving minutes in the day
  add(660, "Break");

  auto found = analyse(parse_one(csv.str()));
  REQUIRE(found.size() == 1);
  CHECK(found[0].infraction_type == "Excessive Driving in day (EDD)");
}

TEST_CASE("a split daily rest with no second half is explained as a pair") {
  auto found = analyse(parse_one("Driver,Start,End,Duration,Activity\n"
                                 "d,02/01/2017 00:00,02/01/2017 03:20,200,Driving\n"
                                 "d,02/01/2017 03:20,02/01/2017 04:05,45,Break\n"
                                 "d,02/01/2017 04:05,02/01/2017 05:45,100,Driving\n"
                                 "d,02/01/2017 05:45,02/01/2017 08:45,180,Break\n"
                                 "d,02/01/2017 08:45,02/01/2017 11:45,180,Driving\n"
                                 "d,02/01/2017 11:45,02/01/2017 20:05,500,Break\n"));
  REQUIRE(found.size() == 1);
  CHECK(found[0].infraction_type == "Missing other half of split daily rest");
  CHECK(found[0].first == 4);
  CHECK(found[0].last == 5);
}

TEST_CASE("a structurally sound day whose rest missed the deadline") {
  auto found = analyse(parse_one("Driver,Start,End,Duration,Activity\n"
                                 "d,02/01/2017 00:00,02/01/2017 03:20,200,Driving\n"
                                 "d,02/01/2017 03:20,02/01/2017 04:05,45,Break\n"
                                 "d,02/01/2017 04:05,02/01/2017 05:45,100,Driving\n"
                                 "d,02/01/2017 05:45,02/01/2017 18:00,735,Other\n"
                                 "d,02/01/2017 18:00,03/01/2017 05:00,660,Break\n"));
  REQUIRE(found.size() == 1);
  CHECK(found[0].infraction_type == "Rest past the daily/weekly deadline");
  CHECK(found[0].first == 4);
  CHECK(found[0].last == 4);
}

TEST_CASE("an inexplicable group is reported as unexplained") {
  // 16-minute break: no builtin test covers it
  auto found = analyse(parse_one("Driver,Start,End,Duration,Activity\n"
                                 "d,02/01/2017 08:00,02/01/2017 08:57,57,Driving\n"
                                 "d,02/01/2017 08:57,02/01/2017 09:00,3,Break\n"
                                 "d,02/01/2017 09:00,02/01/2017 09:02,2,Driving\n"
                                 "d,02/01/2017 09:02,02/01/2017 09:18,16,Break\n"));
  REQUIRE(found.size() == 1);
  CHECK(found[0].infraction_type == "Unexplained");
  CHECK(found[0].first == 0);
  CHECK(found[0].last == 3);
}

TEST_CASE("a fully legal log yields no findings") {
  auto found = analyse(parse_one("Driver,Start,End,Duration,Activity\n"
                                 "d,02/01/2017 00:00,02/01/2017 03:20,200,Driving\n"
                                 "d,02/01/2017 03:20,02/01/2017 04:05,45,Break\n"
                                 "d,02/01/2017 04:05,02/01/2017 05:45,100,Driving\n"
                                 "d,02/01/2017 05:45,02/01/2017 16:45,660,Break\n"));
  CHECK(found.empty());
}

TEST_CASE("relaxed relabelling reports the exact diff") {
  DriverLog log = parse_one(
      "Driver,Start,End,Duration,Activity\n"
      "d,02/01/2017 08:00,02/01/2017 08:57,57,Driving\n"
      "d,02/01/2017 08:57,02/01/2017 09:00,3,Break\n"
      "d,02/01/2017 09:00,02/01/2017 09:02,2,Driving\n"
      "d,02/01/2017 09:02,02/01/2017 09:18,16,Break\n");

  SUBCASE("zero epsilon changes nothing") {
    auto [labels, changes] = relabel_relaxed(log, RegulationParameters{}, 0);
    CHECK(changes.empty());
    CHECK(labels == label_log(log, RegulationParameters{}));
  }

  SUBCASE("two minutes flip the poisoning break and the legality") {
    auto [labels, changes] = relabel_relaxed(log, RegulationParameters{}, 2);
    REQUIRE(labels.size() == 4);
    for (const auto& a : labels) CHECK(a.contexts.legal);
    CHECK(labels[3].contexts.token == Token::B_T0);

    bool token_flip = false;
    int legality_flips = 0;
    for (const auto& ch : changes) {
      if (ch.index == 3 && ch.field == "token" && ch.before == "B_T2" && ch.after == "B_T0")
        token_flip = true;
      if (ch.legality_flip) ++legality_flips;
    }
    CHECK(token_flip);
    CHECK(legality_flips == 4);
  }
}

TEST_CASE("the sweep attributes each flip to its smallest epsilon") {
  DriverLog log = parse_one(
      "Driver,Start,End,Duration,Activity\n"
      "d,02/01/2017 08:00,02/01/2017 08:57,57,Driving\n"
      "d,02/01/2017 08:57,02/01/2017 09:00,3,Break\n"
      "d,02/01/2017 09:00,02/01/2017 09:02,2,Driving\n"
      "d,02/01/2017 09:02,02/01/2017 09:18,16,Break\n");
  auto findings = epsilon_sweep(log, RegulationParameters{}, {1, 2, 5, 10});
  REQUIRE(findings.size() == 1);
  CHECK(findings[0].epsilon == 2);  // one minute is not enough for a 16-minute short break
  CHECK(findings[0].first == 0);
  CHECK(findings[0].last == 3);
  CHECK(!findings[0].changes.empty());

  // a log that stays illegal under every epsilon yields nothing
  DriverLog hard = parse_one(
      "Driver,Start,End,Duration,Activity\n"
      "d,02/01/2017 00:00,02/01/2017 04:40,280,Driving\n"
      "d,02/01/2017 04:40,02/01/2017 05:25,45,Break\n"
      "d,02/01/2017 05:25,02/01/2017 07:05,100,Driving\n"
      "d,02/01/2017 07:05,02/01/2017 18:05,660,Break\n");
  CHECK(epsilon_sweep(hard, RegulationParameters{}, {1, 2, 5}).empty());
}

TEST_CASE("declarative test definitions load from JSON") {
  auto tests = tests_from_json_text(R"({
    "tests": [
      {
        "name": "no marathon runs",
        "infraction_type": "run too long",
        "window": "run",
        "conditions": [
          {"measure": "driving_sum", "op": "gt", "value": 100}
        ]
      },
      {
        "name": "reduced rest finish",
        "window": "terminal_rest",
        "conditions": [
          {"measure": "terminal_token", "op": "in", "value": ["DR_T2"]},
          {"measure": "terminal_legal", "op": "eq", "value": false}
        ]
      },
      {
        "name": "threshold by parameter",
        "window": "day",
        "conditions": [
          {"measure": "driving_sum", "op": "gt", "value": "ndd_driving_max"}
        ]
      }
    ]
  })");
  REQUIRE(tests.size() == 3);
  CHECK(tests[0].window == TestWindow::Run);
  CHECK(tests[0].infraction_type == "run too long");
  CHECK(tests[1].infraction_type == "reduced rest finish");  // name doubles as type
  CHECK(tests[1].conditions[0].tokens == std::vector<Token>{Token::DR_T2});
  CHECK(tests[2].conditions[0].parameter == "ndd_driving_max");

  CHECK_THROWS_AS(tests_from_json_text(R"({"tests": [{"name": "x"}]})"), ConfigError);
  CHECK_THROWS_AS(tests_from_json_text(R"({"tests": [{"name": "x", "window": "run",
    "conditions": [{"measure": "driving_sum", "op": "gt", "value": "bogus_param"}]}]})"),
                  ConfigError);
  CHECK_THROWS_AS(tests_from_json_text("[]"), ConfigError);
}

TEST_CASE("builtin thresholds follow the active parameters") {
  // raising the run bound silences the run finding
  RegulationParameters loose;
  loose.seq_driving_max = 300;
  DriverLog log = parse_one(
      "Driver,Start,End,Duration,Activity\n"
      "d,02/01/2017 00:00,02/01/2017 04:40,280,Driving\n"
      "d,02/01/2017 04:40,02/01/2017 05:25,45,Break\n"
      "d,02/01/2017 05:25,02/01/2017 07:05,100,Driving\n"
      "d,02/01/2017 07:05,02/01/2017 18:05,660,Break\n");
  auto labels = label_log(log, loose);
  CHECK(evaluate_tests(labels, builtin_tests(), loose).empty());
}

TEST_CASE("the report renders per driver and suppresses covered unexplained") {
  DriverLog log = parse_one(
      "Driver,Start,End,Duration,Activity\n"
      "d,02/01/2017 08:00,02/01/2017 08:57,57,Driving\n"
      "d,02/01/2017 08:57,02/01/2017 09:00,3,Break\n"
      "d,02/01/2017 09:00,02/01/2017 09:02,2,Driving\n"
      "d,02/01/2017 09:02,02/01/2017 09:18,16,Break\n");
  auto labels = label_log(log, RegulationParameters{});
  DriverReportInput input;
  input.driver = "d";
  input.infractions = evaluate_tests(labels, builtin_tests(), RegulationParameters{});
  input.findings = epsilon_sweep(log, RegulationParameters{}, {1, 2, 5});
  input.labels = &labels;

  std::string json_text = render_report_json({input});
  // the relaxation finding covers rows 0..3, so the Unexplained entry is gone
  CHECK(json_text.find("Unexplained") == std::string::npos);
  CHECK(json_text.find("\"epsilon\": 2") != std::string::npos);

  std::string text = render_report_text({input});
  CHECK(text.find("d") != std::string::npos);

  // without the relaxation finding the unexplained entry survives
  DriverReportInput bare = input;
  bare.findings.clear();
  CHECK(render_report_json({bare}).find("Unexplained") != std::string::npos);
}
