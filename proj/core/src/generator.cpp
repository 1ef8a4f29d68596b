#include "hos/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"

#include "hos/rng.hpp"
#include "hos/time.hpp"

namespace hos {

namespace {

struct Slot {
  ActivityKind kind;
  int lo, hi;  // inclusive duration range in minutes
};

struct DayShape {
  std::vector<Slot> slots;  // everything before the terminal rest
  int rest_lo, rest_hi;
  Token terminal;
  bool extended;  // consumes one of the week's extended-driving allowances
  bool reduced;   // consumes one of the week's reduced-rest allowances
};

constexpr ActivityKind D = ActivityKind::Driving;
constexpr ActivityKind B = ActivityKind::Break;

// Eight single-day shapes spanning {normal, extended} driving days,
// {uninterrupted, split} breaks and {regular, reduced} daily rests. Ranges
// keep at least one minute of margin inside every regulation bound.
const DayShape& day_shape(int id) {
  static const std::vector<DayShape> shapes = {
      // 0: normal day, one full break, regular rest
      {{{D, 200, 265}, {B, 45, 49}, {D, 200, 260}}, 661, 720, Token::DR_T1, false, false},
      // 1: normal day, short break inside the first sequence, reduced rest
      {{{D, 200, 255}, {B, 4, 10}, {D, 5, 14}, {B, 45, 50}, {D, 200, 255}},
       545, 640, Token::DR_T2, false, true},
      // 2: normal day, split break, regular rest
      {{{D, 110, 134}, {B, 16, 25}, {D, 110, 134}, {B, 31, 40}, {D, 190, 236}},
       680, 760, Token::DR_T1, false, false},
      // 3: normal day, split break plus a short break, reduced rest
      {{{D, 100, 125}, {B, 16, 24}, {D, 4, 12}, {B, 2, 6}, {D, 100, 125}, {B, 30, 38},
        {D, 180, 220}},
       545, 620, Token::DR_T2, false, true},
      // 4: extended day, two full breaks, regular rest
      {{{D, 230, 260}, {B, 45, 52}, {D, 220, 250}, {B, 45, 52}, {D, 55, 85}},
       661, 720, Token::DR_T1, true, false},
      // 5: extended day, short break, reduced rest
      {{{D, 235, 259}, {B, 4, 12}, {D, 4, 10}, {B, 45, 50}, {D, 225, 255}, {B, 45, 50},
        {D, 40, 70}},
       545, 635, Token::DR_T2, true, true},
      // 6: extended day, split break, regular rest
      {{{D, 120, 140}, {B, 16, 26}, {D, 115, 128}, {B, 31, 40}, {D, 228, 255}, {B, 45, 54},
        {D, 45, 70}},
       665, 700, Token::DR_T1, true, false},
      // 7: extended day, split break, reduced rest
      {{{D, 115, 133}, {B, 16, 28}, {D, 115, 133}, {B, 31, 42}, {D, 220, 250}, {B, 45, 56},
        {D, 50, 78}},
       545, 615, Token::DR_T2, true, true},
  };
  return shapes[static_cast<std::size_t>(id)];
}

// Template 8 is a pair: a day closed by the first half of a split daily rest,
// then a day closed by its long second half.
const DayShape& pair_first() {
  static const DayShape shape = {
      {{D, 160, 190}, {B, 45, 48}, {D, 60, 90}}, 182, 210, Token::DR_T3, false, false};
  return shape;
}
const DayShape& pair_second() {
  static const DayShape shape = {{{D, 180, 215}}, 541, 580, Token::DR_T4, false, false};
  return shape;
}

constexpr int kWeeklyRestLo = 2700;
constexpr int kWeeklyRestHi = 2760;
constexpr int kDaysPerWeek = 5;

struct Builder {
  DriverLog log;
  std::vector<GroundTruthDay> days;
  Minutes clock = 0;
  int week = 1;
  int day = 1;

  void append(ActivityKind kind, int duration) {
    ActivityRecord rec;
    rec.driver_id = log.driver_id;
    rec.start = clock;
    rec.end = clock + duration;
    rec.duration_min = duration;
    rec.kind = kind;
    clock = rec.end;
    log.records.push_back(rec);
  }

  // Lays down one day from the shape. close_week upgrades the terminal rest
  // to a full weekly rest; anchor_override carries a pair's shared anchor.
  void build_day(const DayShape& shape, int template_id, Rng& rng, bool close_week,
                 Minutes anchor_override = -1) {
    GroundTruthDay truth;
    truth.driver = log.driver_id;
    truth.week = week;
    truth.day = day;
    truth.template_id = template_id;
    truth.first_row = log.records.size();
    truth.anchor = anchor_override >= 0 ? anchor_override : clock;

    for (const Slot& slot : shape.slots) {
      append(slot.kind, static_cast<int>(rng.next_range(slot.lo, slot.hi)));
    }
    if (close_week) {
      append(B, static_cast<int>(rng.next_range(kWeeklyRestLo, kWeeklyRestHi)));
      truth.terminal = Token::WR_T1;
    } else {
      append(B, static_cast<int>(rng.next_range(shape.rest_lo, shape.rest_hi)));
      truth.terminal = shape.terminal;
    }
    truth.last_row = log.records.size() - 1;
    days.push_back(truth);

    ++day;
    if (close_week) ++week;
  }
};

int draw_template(Rng& rng, const std::vector<double>& mix, double total) {
  double ticket = rng.next_double() * total;
  double acc = 0.0;
  for (std::size_t t = 0; t < mix.size(); ++t) {
    acc += mix[t];
    if (ticket < acc) return static_cast<int>(t);
  }
  return static_cast<int>(mix.size()) - 1;
}

}  // namespace

GeneratedCorpus generate_corpus(int n_drivers, int weeks, const std::vector<double>& template_mix,
                                std::uint64_t seed) {
  if (n_drivers < 1) throw std::invalid_argument("need at least one driver");
  if (weeks < 1) throw std::invalid_argument("need at least one week");
  if (template_mix.empty() || template_mix.size() > kTemplateCount) {
    throw std::invalid_argument("template mix must hold 1 to 9 weights");
  }
  double total = 0.0;
  for (double w : template_mix) {
    if (w < 0.0) throw std::invalid_argument("template weights must be non-negative");
    total += w;
  }
  if (total <= 0.0) throw std::invalid_argument("template mix has no positive weight");

  const Minutes base = parse_timestamp("02/01/2017 00:00");
  GeneratedCorpus corpus;
  for (int i = 0; i < n_drivers; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    Builder builder;
    char name[16];
    std::snprintf(name, sizeof name, "drv%03d", i + 1);
    builder.log.driver_id = name;
    builder.clock = base + (static_cast<Minutes>(i) * 37) % 1440;

    for (int w = 1; w <= weeks; ++w) {
      int week_extended = 0;
      int week_reduced = 0;
      int slot = 1;
      while (slot <= kDaysPerWeek) {
        int t = draw_template(rng, template_mix, total);
        if (t == 8 && slot == kDaysPerWeek) t = 0;  // a pair needs two slots
        if (t >= 4 && t <= 7 && week_extended >= 2) t -= 4;
        if ((t == 1 || t == 3 || t == 5 || t == 7) && week_reduced >= 3) t -= 1;

        if (t == 8) {
          Minutes pair_anchor = builder.clock;
          builder.build_day(pair_first(), 8, rng, false);
          bool close_week = slot + 1 == kDaysPerWeek && w < weeks;
          builder.build_day(pair_second(), 8, rng, close_week, pair_anchor);
          slot += 2;
        } else {
          const DayShape& shape = day_shape(t);
          bool close_week = slot == kDaysPerWeek && w < weeks;
          builder.build_day(shape, t, rng, close_week);
          if (shape.extended) ++week_extended;
          if (shape.reduced) ++week_reduced;
          ++slot;
        }
      }
    }
    corpus.days.insert(corpus.days.end(), builder.days.begin(), builder.days.end());
    corpus.logs.push_back(std::move(builder.log));
  }
  return corpus;
}

std::string truth_to_json(const GeneratedCorpus& corpus) {
  nlohmann::json days = nlohmann::json::array();
  for (const auto& day : corpus.days) {
    days.push_back({{"driver", day.driver},
                    {"week", day.week},
                    {"day", day.day},
                    {"template", day.template_id},
                    {"first_row", day.first_row},
                    {"last_row", day.last_row},
                    {"terminal", to_string(day.terminal)}});
  }
  nlohmann::json doc{{"days", days}};
  return doc.dump(2) + "\n";
}

std::string to_string(InjectionKind kind) {
  switch (kind) {
    case InjectionKind::ExcessiveSequenceDriving: return "excessive_sequence_driving";
    case InjectionKind::ExcessiveNddDriving: return "excessive_ndd_driving";
    case InjectionKind::ExcessiveEddDriving: return "excessive_edd_driving";
    case InjectionKind::MissingSplitRest: return "missing_split_rest";
    case InjectionKind::RestPastDeadline: return "rest_past_deadline";
    case InjectionKind::BorderlineBreak: return "borderline_break";
  }
  return "excessive_sequence_driving";
}

InjectionKind injection_kind_from_string(const std::string& text) {
  if (text == "excessive_sequence_driving") return InjectionKind::ExcessiveSequenceDriving;
  if (text == "excessive_ndd_driving") return InjectionKind::ExcessiveNddDriving;
  if (text == "excessive_edd_driving") return InjectionKind::ExcessiveEddDriving;
  if (text == "missing_split_rest") return InjectionKind::MissingSplitRest;
  if (text == "rest_past_deadline") return InjectionKind::RestPastDeadline;
  if (text == "borderline_break") return InjectionKind::BorderlineBreak;
  throw std::invalid_argument("unknown injection kind \"" + text + "\"");
}

namespace {

struct Target {
  std::size_t log_index = 0;
  std::size_t day_index = 0;   // into corpus.days
  const GroundTruthDay* day = nullptr;
};

bool find_target(const GeneratedCorpus& corpus, const InjectionSpec& spec, Target& out) {
  for (std::size_t li = 0; li < corpus.logs.size(); ++li) {
    if (corpus.logs[li].driver_id != spec.driver) continue;
    for (std::size_t di = 0; di < corpus.days.size(); ++di) {
      const GroundTruthDay& day = corpus.days[di];
      if (day.driver == spec.driver && day.week == spec.week && day.day == spec.day) {
        out.log_index = li;
        out.day_index = di;
        out.day = &day;
        return true;
      }
    }
  }
  return false;
}

bool is_weekly(Token t) { return t == Token::WR_T1 || t == Token::WR_T2; }

// Extended-driving days in the target's week, target itself excluded.
int other_extended_days(const GeneratedCorpus& corpus, const Target& target, bool before_only) {
  int count = 0;
  for (const auto& day : corpus.days) {
    if (day.driver != target.day->driver || day.week != target.day->week) continue;
    if (day.day == target.day->day) continue;
    if (before_only && day.day > target.day->day) continue;
    if (day.template_id >= 4 && day.template_id <= 7) ++count;
  }
  return count;
}

bool pair_halves(const GeneratedCorpus& corpus, const Target& target,
                 const GroundTruthDay** second) {
  if (target.day->template_id != 8 || target.day->terminal != Token::DR_T3) return false;
  if (target.day_index + 1 >= corpus.days.size()) return false;
  const GroundTruthDay& next = corpus.days[target.day_index + 1];
  if (next.driver != target.day->driver || next.template_id != 8 ||
      next.terminal != Token::DR_T4) {
    return false;
  }
  if (second != nullptr) *second = &next;
  return true;
}

bool realizable(const GeneratedCorpus& corpus, const InjectionSpec& spec, Target& target) {
  if (spec.magnitude < 1) return false;
  if (!find_target(corpus, spec, target)) return false;
  const GroundTruthDay& day = *target.day;
  if (day.template_id < 0) return false;  // already edited once
  switch (spec.kind) {
    case InjectionKind::ExcessiveSequenceDriving: {
      // Extending the opening drive must strand only that record, so the day
      // needs a full first break: shapes 0 and 1. The lengthened run must
      // also keep the day inside its normal driving budget, or the edit
      // would plant a second, unintended defect.
      if ((day.template_id != 0 && day.template_id != 1) || spec.magnitude > 300) return false;
      const DriverLog& log = corpus.logs[target.log_index];
      std::int64_t other_driving = 0;
      for (std::size_t r = day.first_row + 1; r <= day.last_row; ++r) {
        if (log.records[r].kind == ActivityKind::Driving)
          other_driving += log.records[r].duration_min;
      }
      const RegulationParameters params;
      return params.seq_driving_max + spec.magnitude + other_driving <= params.ndd_driving_max;
    }
    case InjectionKind::ExcessiveNddDriving:
      // The replacement day must fail as a normal day with its extension
      // budget already spent by two earlier extended days.
      return day.template_id <= 7 && !is_weekly(day.terminal) && spec.magnitude <= 60 &&
             other_extended_days(corpus, target, /*before_only=*/true) >= 2;
    case InjectionKind::ExcessiveEddDriving:
      // The replacement day must overflow even the extended bound while the
      // rest of the week stays under the extension allowance.
      return day.template_id <= 7 && !is_weekly(day.terminal) && spec.magnitude <= 210 &&
             other_extended_days(corpus, target, /*before_only=*/false) <= 1;
    case InjectionKind::MissingSplitRest:
      return spec.magnitude >= 11 && spec.magnitude <= 360 &&
             pair_halves(corpus, target, nullptr);
    case InjectionKind::RestPastDeadline:
      // Any day whose terminal rest carries a deadline (everything except the
      // first half of a split pair).
      return day.terminal != Token::DR_T3 && spec.magnitude >= 11 && spec.magnitude <= 1440;
    case InjectionKind::BorderlineBreak:
      // Needs a short break inside a day already using its split break, so a
      // longer reading cannot re-explain it: shape 3, short break at row 3.
      return day.template_id == 3 && spec.magnitude <= 14;
  }
  return false;
}

// Shifts the row ranges of ground-truth days at or past a (pre-edit) row
// index, after an edit changed the record count.
void shift_truth(GeneratedCorpus& corpus, const std::string& driver, std::size_t from_old_row,
                 std::ptrdiff_t delta) {
  if (delta == 0) return;
  for (auto& day : corpus.days) {
    if (day.driver != driver || day.first_row < from_old_row) continue;
    day.first_row = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(day.first_row) + delta);
    day.last_row = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(day.last_row) + delta);
  }
}

// Rebuilds start/end times from first_row on, then restates every day's
// deadline anchor (an intact pair's second half shares the first half's).
void retime(GeneratedCorpus& corpus, std::size_t log_index, std::size_t first_row) {
  DriverLog& log = corpus.logs[log_index];
  for (std::size_t r = first_row; r < log.records.size(); ++r) {
    Minutes start = r == 0 ? log.records[0].start : log.records[r - 1].end;
    log.records[r].start = start;
    log.records[r].end = start + log.records[r].duration_min;
  }
  const GroundTruthDay* prev = nullptr;
  for (auto& day : corpus.days) {
    if (day.driver != log.driver_id) continue;
    bool second_half = prev != nullptr && day.template_id == 8 && prev->template_id == 8 &&
                       prev->terminal == Token::DR_T3;
    day.anchor = second_half ? prev->anchor : log.records[day.first_row].start;
    prev = &day;
  }
}

}  // namespace

bool injection_realizable(const GeneratedCorpus& corpus, const InjectionSpec& spec) {
  Target target;
  return realizable(corpus, spec, target);
}

ExpectedFinding inject(GeneratedCorpus& corpus, const InjectionSpec& spec) {
  Target target;
  if (!realizable(corpus, spec, target)) {
    throw std::invalid_argument("spec unrealizable on target day");
  }
  DriverLog& log = corpus.logs[target.log_index];
  GroundTruthDay& day = corpus.days[target.day_index];
  const RegulationParameters params;  // defaults define the bounds being broken
  const int m = spec.magnitude;

  ExpectedFinding expected;
  expected.driver = spec.driver;

  switch (spec.kind) {
    case InjectionKind::ExcessiveSequenceDriving: {
      ActivityRecord& rec = log.records[day.first_row];
      rec.duration_min = static_cast<int>(params.seq_driving_max) + m;
      day.template_id = -1;
      retime(corpus, target.log_index, day.first_row);
      expected.infraction_type = "Excessive Driving without breaks";
      expected.first_start = log.records[day.first_row].start;
      expected.last_end = log.records[day.first_row].end;
      break;
    }
    case InjectionKind::ExcessiveNddDriving:
    case InjectionKind::ExcessiveEddDriving: {
      // Replace the day: two full sequences at the bound, then the overflow.
      bool extended = spec.kind == InjectionKind::ExcessiveEddDriving;
      int tail = extended ? static_cast<int>(params.edd_driving_max -
                                             2 * params.seq_driving_max) + m
                          : m;
      std::vector<int> durations = {static_cast<int>(params.seq_driving_max),
                                     static_cast<int>(params.full_break_min),
                                     static_cast<int>(params.seq_driving_max),
                                     static_cast<int>(params.full_break_min), tail,
                                     static_cast<int>(params.daily_rest_regular_min)};
      std::vector<ActivityKind> kinds = {D, B, D, B, D, B};
      std::ptrdiff_t old_count =
          static_cast<std::ptrdiff_t>(day.last_row - day.first_row + 1);
      std::vector<ActivityRecord> fresh;
      for (std::size_t s = 0; s < durations.size(); ++s) {
        ActivityRecord rec;
        rec.driver_id = log.driver_id;
        rec.duration_min = durations[s];
        rec.kind = kinds[s];
        fresh.push_back(rec);
      }
      log.records.erase(log.records.begin() + static_cast<std::ptrdiff_t>(day.first_row),
                        log.records.begin() + static_cast<std::ptrdiff_t>(day.last_row) + 1);
      log.records.insert(log.records.begin() + static_cast<std::ptrdiff_t>(day.first_row),
                         fresh.begin(), fresh.end());
      std::ptrdiff_t delta = static_cast<std::ptrdiff_t>(durations.size()) - old_count;
      shift_truth(corpus, log.driver_id, day.first_row + static_cast<std::size_t>(old_count),
                  delta);
      day.last_row = day.first_row + durations.size() - 1;
      day.template_id = -1;
      day.terminal = Token::DR_T1;
      retime(corpus, target.log_index, day.first_row);
      expected.infraction_type = extended ? "Excessive Driving in day (EDD)"
                                          : "Surpassed NDD driving time";
      expected.first_start = log.records[day.first_row].start;
      expected.last_end = log.records[day.last_row].end;
      break;
    }
    case InjectionKind::MissingSplitRest: {
      const GroundTruthDay* second = nullptr;
      pair_halves(corpus, target, &second);
      auto& second_day = corpus.days[target.day_index + 1];
      ActivityRecord& rest = log.records[second_day.last_row];
      rest.duration_min = static_cast<int>(params.split_rest_second_min) - m;
      second_day.template_id = -1;
      second_day.terminal = Token::DR_T3;  // what the shortened rest reads as
      retime(corpus, target.log_index, second_day.last_row);
      expected.infraction_type = "Missing other half of split daily rest";
      expected.first_start = log.records[second_day.first_row].start;
      expected.last_end = log.records[second_day.last_row].end;
      break;
    }
    case InjectionKind::RestPastDeadline: {
      ActivityRecord& rest = log.records[day.last_row];
      Minutes limit_point = is_weekly(day.terminal) ? rest.start : rest.end;
      int filler = static_cast<int>(params.daily_rest_deadline - (limit_point - day.anchor)) + m;
      ActivityRecord other;
      other.driver_id = log.driver_id;
      other.duration_min = filler;
      other.kind = ActivityKind::Other;
      log.records.insert(log.records.begin() + static_cast<std::ptrdiff_t>(day.last_row), other);
      shift_truth(corpus, log.driver_id, day.last_row, 1);
      day.last_row += 1;
      retime(corpus, target.log_index, day.last_row - 1);
      expected.infraction_type = "Rest past the daily/weekly deadline";
      expected.first_start = log.records[day.last_row].start;
      expected.last_end = log.records[day.last_row].end;
      break;
    }
    case InjectionKind::BorderlineBreak: {
      // Shape 3 keeps its short break at the fourth row of the day.
      std::size_t row = day.first_row + 3;
      ActivityRecord& rec = log.records[row];
      rec.duration_min = static_cast<int>(params.short_break_max) + m;
      day.template_id = -1;
      retime(corpus, target.log_index, row);
      expected.infraction_type = "borderline_break";
      expected.epsilon = m + 1;
      // The first two rows lose their parse until the bound is relaxed.
      expected.first_start = log.records[day.first_row].start;
      expected.last_end = log.records[day.first_row + 1].end;
      break;
    }
  }
  return expected;
}

}  // namespace hos
