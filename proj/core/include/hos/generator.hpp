#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hos/activity_log.hpp"
#include "hos/regulation.hpp"

namespace hos {

// Ground truth for one generated day: which template produced it and where
// its rows sit in the driver's record list.
struct GroundTruthDay {
  std::string driver;
  int week = 1;
  int day = 1;           // cumulative day ordinal, matching the labeller
  int template_id = 0;   // 0..7 single-day templates, 8 both halves of a split-rest pair
  std::size_t first_row = 0;
  std::size_t last_row = 0;     // inclusive
  Token terminal = Token::DR_T1;  // the day-closing rest as built
  Minutes anchor = 0;             // deadline anchor (start of the day, or of
                                  // the pair's first day for its second half)
};

struct GeneratedCorpus {
  std::vector<DriverLog> logs;       // ordered by driver id
  std::vector<GroundTruthDay> days;  // in log order per driver
};

constexpr int kTemplateCount = 9;

// Samples schedules that satisfy every regulation bound by construction:
// n_drivers logs of `weeks` five-day weeks, day shapes drawn from
// template_mix (weights over the 9 built-in templates, missing entries 0).
// Weekly allowances are respected by deterministic template substitution,
// and every non-final week ends in a full weekly rest. Throws
// std::invalid_argument on non-positive sizes or an unusable mix.
GeneratedCorpus generate_corpus(int n_drivers, int weeks, const std::vector<double>& template_mix,
                                std::uint64_t seed);

std::string truth_to_json(const GeneratedCorpus& corpus);

enum class InjectionKind {
  ExcessiveSequenceDriving,  // driving run past the single-sequence bound
  ExcessiveNddDriving,       // day driving past the normal bound, extension budget spent
  ExcessiveEddDriving,       // day driving past even the extended bound
  MissingSplitRest,          // split daily rest whose second half never comes
  RestPastDeadline,          // terminal rest finishing past its deadline
  BorderlineBreak,           // in-sequence break a few minutes past the short-break cap
};

std::string to_string(InjectionKind kind);
InjectionKind injection_kind_from_string(const std::string& text);

struct InjectionSpec {
  InjectionKind kind = InjectionKind::ExcessiveSequenceDriving;
  std::string driver;
  int week = 1;
  int day = 1;        // cumulative day ordinal (GroundTruthDay::day)
  int magnitude = 1;  // minutes over/under the relevant bound
};

// What the downstream analysis is expected to report for an injected log.
struct ExpectedFinding {
  std::string infraction_type;  // constraint-test type, or "borderline_break"
  std::string driver;
  Minutes first_start = 0;  // expected finding span, post-injection times
  Minutes last_end = 0;
  int epsilon = 0;  // smallest relaxation that legalizes a borderline break
};

// True when `spec` can be realized on its target day (template shape, weekly
// context and magnitude all permit the edit).
bool injection_realizable(const GeneratedCorpus& corpus, const InjectionSpec& spec);

// Applies the minimal edit realizing the infraction, re-times the driver's
// log, patches the ground truth, and returns the finding the analysis is
// expected to produce. Throws std::invalid_argument("spec unrealizable on
// target day") when injection_realizable is false.
ExpectedFinding inject(GeneratedCorpus& corpus, const InjectionSpec& spec);

}  // namespace hos
