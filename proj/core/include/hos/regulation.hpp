#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace hos {

// Finest-grain activity categories. A = work (Driving/Other/Idle); B_* breaks;
// DR_* daily rests; WR_* weekly rests. Unknown is the unresolved sentinel.
enum class Token {
  A,
  B_T0,   // short in-sequence break, below short_break_max
  B_T1,   // full sequence-closing break
  B_T2,   // first part of a split break
  B_T3,   // second part of a split break
  DR_T1,  // regular daily rest
  DR_T2,  // reduced daily rest (count-limited per week)
  DR_T3,  // first part of a split daily rest
  DR_T4,  // second part of a split daily rest
  WR_T1,  // regular weekly rest
  WR_T2,  // reduced weekly rest
  Unknown,
};

std::string to_string(Token token);
Token token_from_string(const std::string& text);

// Grammar positions a break-kind record can occupy. Each role admits a fixed
// token set; duration intervals then filter it.
enum class GrammarRole {
  InSequence,           // stays inside the basic sequence: B_T0
  SplitFirst,           // opens a split break: B_T2
  SplitSecond,          // completes a split break: B_T3
  SequenceClose,        // closes the sequence outright: B_T1
  DayClose,             // closes the daily period: DR_T1 | DR_T2 | DR_T3
  DayCloseSplitPending, // completes a split daily rest: DR_T4
  WeekClose,            // closes the weekly period: WR_T1 | WR_T2
};

std::string to_string(GrammarRole role);

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

// Every duration boundary and count limit of the regulation, in minutes
// (counts excepted). Relaxation shifts the duration fields and records the
// accumulated epsilon so derived interval upper bounds widen symmetrically.
struct RegulationParameters {
  int short_break_max = 15;
  int split1_break_min = 15;
  int split2_break_min = 30;
  int full_break_min = 45;
  int seq_driving_max = 270;
  int ndd_driving_max = 540;
  int edd_driving_max = 600;
  int edd_per_week_max = 2;
  int daily_rest_regular_min = 660;
  int daily_rest_reduced_min = 540;
  int daily_rest_reduced_per_week_max = 3;
  int split_rest_first_min = 180;
  int split_rest_second_min = 540;
  int weekly_rest_regular_min = 2700;
  int weekly_rest_reduced_min = 1440;
  int daily_rest_deadline = 1440;
  int weekly_rest_deadline_days = 6;
  int epsilon_applied = 0;

  bool operator==(const RegulationParameters&) const = default;
};

// Maxima +epsilon, minima -epsilon (floored at 1), counts unchanged.
RegulationParameters relax(const RegulationParameters& params, int epsilon_min);

// Half-open admissible duration interval [lo, hi) for a token under params.
// hi < 0 means unbounded. Token::A and Token::Unknown have no interval (throws).
struct DurationInterval {
  std::int64_t lo;
  std::int64_t hi;  // exclusive; -1 = unbounded

  bool contains(std::int64_t d) const { return d >= lo && (hi < 0 || d < hi); }
};

DurationInterval token_interval(Token token, const RegulationParameters& params);

// Tokens of the given role whose interval admits the duration.
std::vector<Token> admissible_role_tokens(GrammarRole role, std::int64_t duration_min,
                                          const RegulationParameters& params);

// JSON object with one key per parameter field; missing keys keep defaults,
// unknown keys are errors. Validates the structural invariants.
RegulationParameters load_parameters(std::istream& in);
RegulationParameters parameters_from_json_text(const std::string& text);
void validate(const RegulationParameters& params);

}  // namespace hos
