#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hos/activity_log.hpp"
#include "hos/regulation.hpp"

namespace hos {

enum class DayType { Ndd, Edd, Unknown };
enum class SequencePos { First, Second, Third, Unique, Unknown };
enum class BreakStyle { Uninterrupted, Split1, Split2, Unknown };

std::string to_string(DayType v);
std::string to_string(SequencePos v);
std::string to_string(BreakStyle v);
// All three accept the historical "unkown" spelling and normalize it.
DayType day_type_from_string(const std::string& text);
SequencePos sequence_pos_from_string(const std::string& text);
BreakStyle break_style_from_string(const std::string& text);

struct ContextSet {
  int week = 1;
  int day = 1;
  DayType day_type = DayType::Unknown;
  SequencePos sequence = SequencePos::Unknown;
  BreakStyle break_type = BreakStyle::Unknown;
  Token token = Token::Unknown;
  bool legal = false;

  bool operator==(const ContextSet&) const = default;
};

struct LabeledActivity {
  ActivityRecord record;
  ContextSet contexts;
  std::string infraction;  // empty = none; filled by the infraction engine

  bool operator==(const LabeledActivity&) const = default;
};

// Recognizes the log against the hours-of-service grammar. Activities covered
// by a complete parse carry resolved contexts and legal=yes (or legal=no for
// days whose rest only missed the deadline); unparseable stretches become
// blocks with locally tagged tokens, unknown day/sequence contexts and
// legal=no. Never throws on content: any input yields one output per record.
std::vector<LabeledActivity> label_log(const DriverLog& log, const RegulationParameters& params);

// Tokens admissible for a record kind, duration and grammar position.
// Driving/Other/Idle admit exactly {A}; Break defers to the role's
// duration-filtered token set.
std::vector<Token> admissible_tokens(ActivityKind kind, std::int64_t duration_min,
                                     GrammarRole role, const RegulationParameters& params);

// Indented week -> day -> sequence -> activity rendering of a labelled log.
std::string explain_parse(const std::vector<LabeledActivity>& labels);

// Annotated CSV: Driver,Start,End,Duration,Activity,Week,Day,DayType,Sequence,
// BreakType,Token,Legal and optionally a trailing Infraction column.
void write_labelled_csv(const std::vector<LabeledActivity>& labels, std::ostream& out,
                        bool include_infraction_column = false);
// Accepts both the 12- and 13-column layout; normalizes "unkown".
std::vector<LabeledActivity> read_labelled_csv(std::istream& in);

}  // namespace hos
