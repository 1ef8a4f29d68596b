#include "doctest.h"

#include <sstream>
#include <string>

#include "hos/activity_log.hpp"
#include "hos/day_encoder.hpp"
#include "hos/infractions.hpp"
#include "hos/labeller.hpp"

using namespace hos;

namespace {

std::vector<LabeledActivity> label_csv(const std::string& csv) {
  std::istringstream in(csv);
  auto logs = parse_log(in);
  std::vector<LabeledActivity> all;
  for (const auto& log : logs) {
    auto labels = label_log(log, RegulationParameters{});
    all.insert(all.end(), labels.begin(), labels.end());
  }
  return all;
}

}  // namespace

TEST_CASE("a labelled log splits into per-day documents by legality") {
  auto labels = label_csv(
      "Driver,Start,End,Duration,Activity\n"
      // legal day
      "a,02/01/2017 00:00,02/01/2017 03:20,200,Driving\n"
      "a,02/01/2017 03:20,02/01/2017 04:05,45,Break\n"
      "a,02/01/2017 04:05,02/01/2017 05:45,100,Driving\n"
      "a,02/01/2017 05:45,02/01/2017 16:45,660,Break\n"
      // illegal stretch: a 280-minute run
      "a,02/01/2017 16:45,02/01/2017 21:25,280,Driving\n"
      "a,02/01/2017 21:25,02/01/2017 22:10,45,Break\n"
      "a,02/01/2017 22:10,02/01/2017 23:50,100,Driving\n"
      "a,02/01/2017 23:50,03/01/2017 10:50,660,Break\n");
  evaluate_tests(labels, builtin_tests(), RegulationParameters{});

  EncodedCorpora corpora = encode_corpus(labels);
  // day 2 holds the illegal block plus the re-anchored legal tail; one illegal
  // activity poisons the whole day document
  REQUIRE(corpora.legal.size() == 1);
  REQUIRE(corpora.illegal.size() == 1);
  CHECK(corpora.legal[0].driver == "a");
  CHECK(corpora.legal[0].day == 1);
  CHECK(corpora.legal[0].legal);
  CHECK(corpora.legal[0].words.size() == 4);
  CHECK(!corpora.illegal[0].legal);
  CHECK(corpora.illegal[0].day == 2);
  CHECK(corpora.illegal[0].words.size() == 4);

  // legal words carry four codes, illegal words five (the infraction text)
  for (const auto& w : corpora.legal[0].words) {
    CHECK(std::count(w.begin(), w.end(), '|') == 3);
  }
  for (const auto& w : corpora.illegal[0].words) {
    CHECK(std::count(w.begin(), w.end(), '|') == 4);
  }
}

TEST_CASE("words decode back to their parts") {
  std::string w = encode_word(ActivityKind::Break, DayType::Ndd, BreakStyle::Split1, Token::B_T2);
  DecodedWord d = decode_word(w);
  CHECK(d.kind == ActivityKind::Break);
  CHECK(d.day_type == DayType::Ndd);
  CHECK(d.break_type == BreakStyle::Split1);
  CHECK(d.token == Token::B_T2);
  CHECK(d.infraction.empty());

  // the infraction code resolves through the codebook
  InfractionCodebook codebook;
  int code = codebook.code_for("Excessive Driving in day (EDD)");
  std::string wi = encode_word(ActivityKind::Driving, DayType::Unknown, BreakStyle::Unknown,
                               Token::A, code, /*with_infraction=*/true);
  DecodedWord di = decode_word(wi, &codebook);
  CHECK(di.infraction == "Excessive Driving in day (EDD)");

  CHECK_THROWS_AS(decode_word("9|0|0|0"), InputError);   // out-of-range activity
  CHECK_THROWS_AS(decode_word("0|0|0"), InputError);     // missing a column
  CHECK_THROWS_AS(decode_word("a|0|0|0"), InputError);   // non-numeric
}

TEST_CASE("the codebook freezes builtin texts and appends the rest sorted") {
  InfractionCodebook codebook;
  CHECK(codebook.code_for("") == 0);
  std::size_t frozen = codebook.size();
  CHECK(frozen > 1);

  // codes are stable regardless of observation order
  std::vector<LabeledActivity> labels(2);
  labels[0].infraction = "zzz custom";
  labels[1].infraction = "aaa custom";
  codebook.extend(labels);
  CHECK(codebook.size() == frozen + 2);
  CHECK(codebook.code_for("aaa custom") == static_cast<int>(frozen));
  CHECK(codebook.code_for("zzz custom") == static_cast<int>(frozen) + 1);
  CHECK(codebook.text_for(codebook.code_for("zzz custom")) == "zzz custom");

  CHECK_THROWS_AS(codebook.code_for("never seen"), InputError);
  CHECK_THROWS_AS(codebook.text_for(999), InputError);
}

TEST_CASE("corpus files round-trip") {
  auto labels = label_csv(
      "Driver,Start,End,Duration,Activity\n"
      "a,02/01/2017 00:00,02/01/2017 03:20,200,Driving\n"
      "a,02/01/2017 03:20,02/01/2017 04:05,45,Break\n"
      "a,02/01/2017 04:05,02/01/2017 05:45,100,Driving\n"
      "a,02/01/2017 05:45,02/01/2017 16:45,660,Break\n");
  EncodedCorpora corpora = encode_corpus(labels);

  std::ostringstream out;
  write_corpus(corpora.legal, out);
  std::istringstream in(out.str());
  CHECK(read_corpus(in) == corpora.legal);

  std::istringstream broken("a,1,notanumber,1, 0|0|0|0\n");
  CHECK_THROWS_AS(read_corpus(broken), InputError);
}

TEST_CASE("documents follow day boundaries across drivers") {
  auto labels = label_csv(
      "Driver,Start,End,Duration,Activity\n"
      "a,02/01/2017 00:00,02/01/2017 03:20,200,Driving\n"
      "a,02/01/2017 03:20,02/01/2017 04:05,45,Break\n"
      "a,02/01/2017 04:05,02/01/2017 05:45,100,Driving\n"
      "a,02/01/2017 05:45,02/01/2017 16:45,660,Break\n"
      "a,02/01/2017 16:45,02/01/2017 20:05,200,Driving\n"
      "a,02/01/2017 20:05,02/01/2017 20:50,45,Break\n"
      "a,02/01/2017 20:50,02/01/2017 22:30,100,Driving\n"
      "a,02/01/2017 22:30,03/01/2017 09:30,660,Break\n"
      "b,02/01/2017 00:00,02/01/2017 03:20,200,Driving\n"
      "b,02/01/2017 03:20,02/01/2017 04:05,45,Break\n"
      "b,02/01/2017 04:05,02/01/2017 05:45,100,Driving\n"
      "b,02/01/2017 05:45,02/01/2017 16:45,660,Break\n");
  EncodedCorpora corpora = encode_corpus(labels);
  REQUIRE(corpora.legal.size() == 3);
  CHECK(corpora.legal[0].driver == "a");
  CHECK(corpora.legal[0].day == 1);
  CHECK(corpora.legal[1].driver == "a");
  CHECK(corpora.legal[1].day == 2);
  CHECK(corpora.legal[2].driver == "b");
  CHECK(corpora.legal[2].day == 1);
  CHECK(corpora.illegal.empty());

  // identical schedules encode to identical word sequences
  CHECK(corpora.legal[0].words == corpora.legal[2].words);
}
