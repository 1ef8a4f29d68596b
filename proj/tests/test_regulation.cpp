#include "doctest.h"

#include <algorithm>
#include <sstream>

#include "hos/regulation.hpp"

using namespace hos;

namespace {

bool has(const std::vector<Token>& tokens, Token t) {
  return std::find(tokens.begin(), tokens.end(), t) != tokens.end();
}

}  // namespace

TEST_CASE("token names round-trip") {
  for (Token t : {Token::A, Token::B_T0, Token::B_T1, Token::B_T2, Token::B_T3, Token::DR_T1,
                  Token::DR_T2, Token::DR_T3, Token::DR_T4, Token::WR_T1, Token::WR_T2}) {
    CHECK(token_from_string(to_string(t)) == t);
  }
  CHECK_THROWS_AS(token_from_string("B_T9"), std::invalid_argument);
}

TEST_CASE("token intervals pin the regulation boundaries") {
  RegulationParameters p;

  auto iv = token_interval(Token::B_T0, p);
  CHECK(iv.lo == 1);
  CHECK(iv.hi == 15);
  CHECK(iv.contains(14));
  CHECK(!iv.contains(15));

  iv = token_interval(Token::B_T1, p);
  CHECK(iv.lo == 45);

  iv = token_interval(Token::B_T2, p);
  CHECK(iv.lo == 15);

  iv = token_interval(Token::B_T3, p);
  CHECK(iv.lo == 30);

  iv = token_interval(Token::DR_T1, p);
  CHECK(iv.lo == 660);

  iv = token_interval(Token::DR_T2, p);
  CHECK(iv.lo == 540);
  CHECK(iv.hi == 660);
  CHECK(!iv.contains(660));  // 11h on the nose is a regular daily rest

  iv = token_interval(Token::DR_T3, p);
  CHECK(iv.lo == 180);

  iv = token_interval(Token::DR_T4, p);
  CHECK(iv.lo == 540);

  iv = token_interval(Token::WR_T1, p);
  CHECK(iv.lo == 2700);
  CHECK(iv.hi == -1);  // unbounded

  iv = token_interval(Token::WR_T2, p);
  CHECK(iv.lo == 1440);
  CHECK(iv.hi == 2700);

  CHECK_THROWS_AS(token_interval(Token::A, p), std::invalid_argument);
  CHECK_THROWS_AS(token_interval(Token::Unknown, p), std::invalid_argument);
}

TEST_CASE("role filtering admits exactly the duration-compatible tokens") {
  RegulationParameters p;

  // a 39-minute break can only open a split
  auto tokens = admissible_role_tokens(GrammarRole::SplitFirst, 39, p);
  CHECK(has(tokens, Token::B_T2));
  CHECK(admissible_role_tokens(GrammarRole::SequenceClose, 39, p).empty());

  // a 3-minute break stays in the sequence
  tokens = admissible_role_tokens(GrammarRole::InSequence, 3, p);
  CHECK(tokens == std::vector<Token>{Token::B_T0});
  CHECK(admissible_role_tokens(GrammarRole::SplitFirst, 3, p).empty());

  // a 572-minute rest closes the day as a reduced daily rest only
  tokens = admissible_role_tokens(GrammarRole::DayClose, 572, p);
  CHECK(tokens == std::vector<Token>{Token::DR_T2});

  // 700 minutes is a regular daily rest and too long for a reduced one
  tokens = admissible_role_tokens(GrammarRole::DayClose, 700, p);
  CHECK(has(tokens, Token::DR_T1));
  CHECK(!has(tokens, Token::DR_T2));

  // a 200-minute rest can only be the first half of a split daily rest
  tokens = admissible_role_tokens(GrammarRole::DayClose, 200, p);
  CHECK(tokens == std::vector<Token>{Token::DR_T3});

  // week closes distinguish reduced from regular at the 45 h mark
  CHECK(admissible_role_tokens(GrammarRole::WeekClose, 2699, p) ==
        std::vector<Token>{Token::WR_T2});
  CHECK(admissible_role_tokens(GrammarRole::WeekClose, 2700, p) ==
        std::vector<Token>{Token::WR_T1});
}

TEST_CASE("relaxation widens maxima, lowers minima, and is identity at zero") {
  RegulationParameters p;
  CHECK(relax(p, 0) == p);

  RegulationParameters r = relax(p, 2);
  CHECK(r.short_break_max == 17);
  CHECK(r.full_break_min == 43);
  CHECK(r.split1_break_min == 13);
  CHECK(r.split2_break_min == 28);
  CHECK(r.seq_driving_max == 272);
  CHECK(r.ndd_driving_max == 542);
  CHECK(r.edd_driving_max == 602);
  CHECK(r.daily_rest_regular_min == 658);
  CHECK(r.epsilon_applied == 2);
  // counts are never relaxed
  CHECK(r.edd_per_week_max == p.edd_per_week_max);
  CHECK(r.daily_rest_reduced_per_week_max == p.daily_rest_reduced_per_week_max);
  CHECK(r.weekly_rest_deadline_days == p.weekly_rest_deadline_days);

  // under relaxation a 16-minute break becomes a legal short break
  CHECK(token_interval(Token::B_T0, r).contains(16));
  CHECK(!token_interval(Token::B_T0, p).contains(16));

  // minima never drop below one minute
  RegulationParameters extreme = relax(p, 100);
  CHECK(token_interval(Token::B_T0, extreme).lo == 1);
}

TEST_CASE("parameters load from JSON with defaults and strict keys") {
  RegulationParameters p = parameters_from_json_text(R"({"short_break_max": 20})");
  CHECK(p.short_break_max == 20);
  CHECK(p.full_break_min == 45);  // untouched default

  CHECK_THROWS_AS(parameters_from_json_text(R"({"not_a_field": 1})"), ConfigError);
  CHECK_THROWS_AS(parameters_from_json_text("not json"), ConfigError);
  // structurally invalid: split minimum above the full-break minimum
  CHECK_THROWS_AS(parameters_from_json_text(R"({"split1_break_min": 50})"), ConfigError);

  std::istringstream in(R"({"edd_per_week_max": 3})");
  CHECK(load_parameters(in).edd_per_week_max == 3);
}
