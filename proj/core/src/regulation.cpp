#include "hos/regulation.hpp"

#include <algorithm>
#include <istream>

#include "json.hpp"

namespace hos {

std::string to_string(Token token) {
  switch (token) {
    case Token::A: return "A";
    case Token::B_T0: return "B_T0";
    case Token::B_T1: return "B_T1";
    case Token::B_T2: return "B_T2";
    case Token::B_T3: return "B_T3";
    case Token::DR_T1: return "DR_T1";
    case Token::DR_T2: return "DR_T2";
    case Token::DR_T3: return "DR_T3";
    case Token::DR_T4: return "DR_T4";
    case Token::WR_T1: return "WR_T1";
    case Token::WR_T2: return "WR_T2";
    case Token::Unknown: return "unknown";
  }
  return "?";
}

Token token_from_string(const std::string& text) {
  static const std::pair<const char*, Token> table[] = {
      {"A", Token::A},         {"B_T0", Token::B_T0},   {"B_T1", Token::B_T1},
      {"B_T2", Token::B_T2},   {"B_T3", Token::B_T3},   {"DR_T1", Token::DR_T1},
      {"DR_T2", Token::DR_T2}, {"DR_T3", Token::DR_T3}, {"DR_T4", Token::DR_T4},
      {"WR_T1", Token::WR_T1}, {"WR_T2", Token::WR_T2}, {"unknown", Token::Unknown},
      {"unkown", Token::Unknown},
  };
  for (const auto& [name, token] : table)
    if (text == name) return token;
  throw std::invalid_argument("unknown token \"" + text + "\"");
}

std::string to_string(GrammarRole role) {
  switch (role) {
    case GrammarRole::InSequence: return "in-sequence";
    case GrammarRole::SplitFirst: return "split-first";
    case GrammarRole::SplitSecond: return "split-second";
    case GrammarRole::SequenceClose: return "sequence-close";
    case GrammarRole::DayClose: return "day-close";
    case GrammarRole::DayCloseSplitPending: return "day-close-split-pending";
    case GrammarRole::WeekClose: return "week-close";
  }
  return "?";
}

RegulationParameters relax(const RegulationParameters& params, int epsilon_min) {
  if (epsilon_min < 0) throw std::invalid_argument("negative epsilon");
  RegulationParameters r = params;
  const auto up = [&](int& field) { field += epsilon_min; };
  const auto down = [&](int& field) { field = std::max(1, field - epsilon_min); };
  up(r.short_break_max);
  up(r.seq_driving_max);
  up(r.ndd_driving_max);
  up(r.edd_driving_max);
  up(r.daily_rest_deadline);
  down(r.split1_break_min);
  down(r.split2_break_min);
  down(r.full_break_min);
  down(r.daily_rest_regular_min);
  down(r.daily_rest_reduced_min);
  down(r.split_rest_first_min);
  down(r.split_rest_second_min);
  down(r.weekly_rest_regular_min);
  down(r.weekly_rest_reduced_min);
  r.epsilon_applied += epsilon_min;
  return r;
}

DurationInterval token_interval(Token token, const RegulationParameters& p) {
  // Lower bounds sit in the (already shifted) fields. Upper bounds are the
  // shifted lower bound of the neighbouring class plus twice the accumulated
  // epsilon, so both edges widen by epsilon relative to the defaults.
  const std::int64_t e2 = 2 * static_cast<std::int64_t>(p.epsilon_applied);
  switch (token) {
    case Token::B_T0: return {1, p.short_break_max};
    case Token::B_T1: return {p.full_break_min, p.split_rest_first_min + e2};
    case Token::B_T2: return {p.split1_break_min, p.split_rest_first_min + e2};
    case Token::B_T3: return {p.split2_break_min, p.split_rest_first_min + e2};
    case Token::DR_T3: return {p.split_rest_first_min, p.split_rest_second_min + e2};
    case Token::DR_T2: return {p.daily_rest_reduced_min, p.daily_rest_regular_min + e2};
    case Token::DR_T4: return {p.split_rest_second_min, p.weekly_rest_reduced_min + e2};
    case Token::DR_T1: return {p.daily_rest_regular_min, p.weekly_rest_reduced_min + e2};
    case Token::WR_T2: return {p.weekly_rest_reduced_min, p.weekly_rest_regular_min + e2};
    case Token::WR_T1: return {p.weekly_rest_regular_min, -1};
    case Token::A:
    case Token::Unknown: break;
  }
  throw std::invalid_argument("token " + to_string(token) + " has no duration interval");
}

std::vector<Token> admissible_role_tokens(GrammarRole role, std::int64_t duration_min,
                                          const RegulationParameters& params) {
  static const Token in_seq[] = {Token::B_T0};
  static const Token split1[] = {Token::B_T2};
  static const Token split2[] = {Token::B_T3};
  static const Token seq_close[] = {Token::B_T1};
  static const Token day_close[] = {Token::DR_T3, Token::DR_T2, Token::DR_T1};
  static const Token day_close_pending[] = {Token::DR_T4};
  static const Token week_close[] = {Token::WR_T2, Token::WR_T1};

  const auto pick = [&](const Token* begin, const Token* end) {
    std::vector<Token> out;
    for (const Token* t = begin; t != end; ++t)
      if (token_interval(*t, params).contains(duration_min)) out.push_back(*t);
    return out;
  };
  switch (role) {
    case GrammarRole::InSequence: return pick(std::begin(in_seq), std::end(in_seq));
    case GrammarRole::SplitFirst: return pick(std::begin(split1), std::end(split1));
    case GrammarRole::SplitSecond: return pick(std::begin(split2), std::end(split2));
    case GrammarRole::SequenceClose: return pick(std::begin(seq_close), std::end(seq_close));
    case GrammarRole::DayClose: return pick(std::begin(day_close), std::end(day_close));
    case GrammarRole::DayCloseSplitPending:
      return pick(std::begin(day_close_pending), std::end(day_close_pending));
    case GrammarRole::WeekClose: return pick(std::begin(week_close), std::end(week_close));
  }
  return {};
}

void validate(const RegulationParameters& p) {
  const auto positive = [](int v, const char* name) {
    if (v < 1) throw ConfigError(std::string(name) + " must be >= 1");
  };
  positive(p.split1_break_min, "split1_break_min");
  positive(p.split2_break_min, "split2_break_min");
  positive(p.full_break_min, "full_break_min");
  positive(p.daily_rest_regular_min, "daily_rest_regular_min");
  positive(p.daily_rest_reduced_min, "daily_rest_reduced_min");
  positive(p.split_rest_first_min, "split_rest_first_min");
  positive(p.split_rest_second_min, "split_rest_second_min");
  positive(p.weekly_rest_regular_min, "weekly_rest_regular_min");
  positive(p.weekly_rest_reduced_min, "weekly_rest_reduced_min");
  if (p.daily_rest_reduced_min >= p.daily_rest_regular_min)
    throw ConfigError("daily_rest_reduced_min must be below daily_rest_regular_min");
  if (p.weekly_rest_reduced_min >= p.weekly_rest_regular_min)
    throw ConfigError("weekly_rest_reduced_min must be below weekly_rest_regular_min");
  if (!(p.split1_break_min < p.split2_break_min && p.split2_break_min < p.full_break_min))
    throw ConfigError("expected split1_break_min < split2_break_min < full_break_min");
  if (p.ndd_driving_max >= p.edd_driving_max)
    throw ConfigError("ndd_driving_max must be below edd_driving_max");
}

namespace {

RegulationParameters from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("regulation config must be a JSON object");
  RegulationParameters p;
  const std::pair<const char*, int*> fields[] = {
      {"short_break_max", &p.short_break_max},
      {"split1_break_min", &p.split1_break_min},
      {"split2_break_min", &p.split2_break_min},
      {"full_break_min", &p.full_break_min},
      {"seq_driving_max", &p.seq_driving_max},
      {"ndd_driving_max", &p.ndd_driving_max},
      {"edd_driving_max", &p.edd_driving_max},
      {"edd_per_week_max", &p.edd_per_week_max},
      {"daily_rest_regular_min", &p.daily_rest_regular_min},
      {"daily_rest_reduced_min", &p.daily_rest_reduced_min},
      {"daily_rest_reduced_per_week_max", &p.daily_rest_reduced_per_week_max},
      {"split_rest_first_min", &p.split_rest_first_min},
      {"split_rest_second_min", &p.split_rest_second_min},
      {"weekly_rest_regular_min", &p.weekly_rest_regular_min},
      {"weekly_rest_reduced_min", &p.weekly_rest_reduced_min},
      {"daily_rest_deadline", &p.daily_rest_deadline},
      {"weekly_rest_deadline_days", &p.weekly_rest_deadline_days},
  };
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const auto& [name, slot] : fields) {
      if (key == name) {
        if (!value.is_number_integer())
          throw ConfigError("regulation key \"" + key + "\" must be an integer");
        *slot = value.get<int>();
        known = true;
        break;
      }
    }
    if (!known) throw ConfigError("unknown regulation key \"" + key + "\"");
  }
  validate(p);
  return p;
}

}  // namespace

RegulationParameters load_parameters(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad regulation config: ") + e.what());
  }
  return from_json(j);
}

RegulationParameters parameters_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad regulation config: ") + e.what());
  }
  return from_json(j);
}

}  // namespace hos
