#include "hos/infractions.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hos/time.hpp"
#include "json.hpp"

namespace hos {

namespace {

bool rest_class(Token t) {
  switch (t) {
    case Token::DR_T1:
    case Token::DR_T2:
    case Token::DR_T3:
    case Token::DR_T4:
    case Token::WR_T1:
    case Token::WR_T2:
      return true;
    default:
      return false;
  }
}

bool completes_structure(Token t) { return t == Token::B_T1 || t == Token::B_T3 || rest_class(t); }

std::int64_t param_value(const std::string& name, const RegulationParameters& p) {
  if (name == "short_break_max") return p.short_break_max;
  if (name == "split1_break_min") return p.split1_break_min;
  if (name == "split2_break_min") return p.split2_break_min;
  if (name == "full_break_min") return p.full_break_min;
  if (name == "seq_driving_max") return p.seq_driving_max;
  if (name == "ndd_driving_max") return p.ndd_driving_max;
  if (name == "edd_driving_max") return p.edd_driving_max;
  if (name == "edd_per_week_max") return p.edd_per_week_max;
  if (name == "daily_rest_regular_min") return p.daily_rest_regular_min;
  if (name == "daily_rest_reduced_min") return p.daily_rest_reduced_min;
  if (name == "daily_rest_reduced_per_week_max") return p.daily_rest_reduced_per_week_max;
  if (name == "split_rest_first_min") return p.split_rest_first_min;
  if (name == "split_rest_second_min") return p.split_rest_second_min;
  if (name == "weekly_rest_regular_min") return p.weekly_rest_regular_min;
  if (name == "weekly_rest_reduced_min") return p.weekly_rest_reduced_min;
  if (name == "daily_rest_deadline") return p.daily_rest_deadline;
  if (name == "weekly_rest_deadline_days") return p.weekly_rest_deadline_days;
  throw ConfigError("unknown regulation parameter \"" + name + "\" in test condition");
}

struct DayGroup {
  std::string driver;
  int week = 1;
  int day = 1;
  std::size_t first = 0;
  std::size_t last = 0;  // inclusive
  bool needs_review = false;  // has unknown contexts or illegal rows
  DayType day_type = DayType::Unknown;  // first resolved day type in the group
};

std::vector<DayGroup> collect_groups(const std::vector<LabeledActivity>& labels) {
  std::vector<DayGroup> groups;
  std::size_t i = 0;
  while (i < labels.size()) {
    DayGroup g;
    g.driver = labels[i].record.driver_id;
    g.week = labels[i].contexts.week;
    g.day = labels[i].contexts.day;
    g.first = i;
    std::size_t j = i;
    while (j < labels.size() && labels[j].record.driver_id == g.driver &&
           labels[j].contexts.day == g.day) {
      const ContextSet& c = labels[j].contexts;
      if (!c.legal || c.day_type == DayType::Unknown || c.token == Token::Unknown) {
        g.needs_review = true;
      }
      if (g.day_type == DayType::Unknown && c.day_type != DayType::Unknown) {
        g.day_type = c.day_type;
      }
      ++j;
    }
    g.last = j - 1;
    groups.push_back(g);
    i = j;
  }
  return groups;
}

std::int64_t driving_sum(const std::vector<LabeledActivity>& labels, std::size_t first,
                         std::size_t last) {
  std::int64_t sum = 0;
  for (std::size_t i = first; i <= last; ++i) {
    if (labels[i].record.kind == ActivityKind::Driving) sum += labels[i].record.duration_min;
  }
  return sum;
}

struct EvalContext {
  const std::vector<LabeledActivity>* labels = nullptr;
  const DayGroup* group = nullptr;
  const DayGroup* previous = nullptr;  // previous group of the same driver
  std::size_t span_first = 0;          // window instance rows
  std::size_t span_last = 0;
  // edd day counts per (driver, week), counting distinct labelled edd days
  const std::map<std::pair<std::string, int>, std::set<int>>* edd_days = nullptr;
};

bool numeric_compare(std::int64_t lhs, TestOp op, std::int64_t rhs) {
  switch (op) {
    case TestOp::Gt: return lhs > rhs;
    case TestOp::Ge: return lhs >= rhs;
    case TestOp::Lt: return lhs < rhs;
    case TestOp::Le: return lhs <= rhs;
    case TestOp::Eq: return lhs == rhs;
    case TestOp::Ne: return lhs != rhs;
    default: throw ConfigError("numeric condition requires an ordering operator");
  }
}

bool token_compare(Token value, TestOp op, const TestCondition& cond) {
  bool member = std::find(cond.tokens.begin(), cond.tokens.end(), value) != cond.tokens.end();
  switch (op) {
    case TestOp::Eq:
    case TestOp::In:
      return member;
    case TestOp::Ne:
    case TestOp::NotIn:
      return !member;
    default:
      throw ConfigError("token condition requires eq/ne/in/not_in");
  }
}

bool eval_condition(const TestCondition& cond, const EvalContext& ctx,
                    const RegulationParameters& params, std::string* summary) {
  const auto& labels = *ctx.labels;
  switch (cond.measure) {
    case TestMeasure::DrivingSum: {
      std::int64_t value = driving_sum(labels, ctx.span_first, ctx.span_last);
      std::int64_t rhs = cond.parameter.empty() ? cond.number : param_value(cond.parameter, params);
      if (summary) *summary = "driving " + std::to_string(value) + " min vs " + std::to_string(rhs);
      return numeric_compare(value, cond.op, rhs);
    }
    case TestMeasure::TerminalToken: {
      Token value = labels[ctx.group->last].contexts.token;
      if (summary) *summary = "terminal token " + to_string(value);
      return token_compare(value, cond.op, cond);
    }
    case TestMeasure::PreviousTerminalToken: {
      if (ctx.previous == nullptr) return false;
      Token value = labels[ctx.previous->last].contexts.token;
      if (summary) *summary = "previous day ended " + to_string(value);
      return token_compare(value, cond.op, cond);
    }
    case TestMeasure::EddCountWithCurrent: {
      std::int64_t count = 0;
      auto it = ctx.edd_days->find({ctx.group->driver, ctx.group->week});
      if (it != ctx.edd_days->end()) count = static_cast<std::int64_t>(it->second.size());
      if (ctx.group->day_type != DayType::Edd) ++count;
      std::int64_t rhs = cond.parameter.empty() ? cond.number : param_value(cond.parameter, params);
      if (summary) {
        *summary = "week would hold " + std::to_string(count) + " extended days vs allowance " +
                   std::to_string(rhs);
      }
      return numeric_compare(count, cond.op, rhs);
    }
    case TestMeasure::ContextsResolved: {
      bool resolved = true;
      for (std::size_t i = ctx.group->first; i <= ctx.group->last; ++i) {
        const ContextSet& c = labels[i].contexts;
        if (c.day_type == DayType::Unknown || c.sequence == SequencePos::Unknown ||
            c.break_type == BreakStyle::Unknown || c.token == Token::Unknown) {
          resolved = false;
          break;
        }
      }
      if (summary) *summary = resolved ? "contexts resolved" : "contexts unresolved";
      bool expect = cond.flag;
      return cond.op == TestOp::Ne ? resolved != expect : resolved == expect;
    }
    case TestMeasure::TerminalLegal: {
      bool value = labels[ctx.group->last].contexts.legal;
      if (summary) *summary = value ? "terminal activity legal" : "terminal activity illegal";
      bool expect = cond.flag;
      return cond.op == TestOp::Ne ? value != expect : value == expect;
    }
  }
  return false;
}

void write_back(std::vector<LabeledActivity>& labels, const Infraction& inf) {
  for (std::size_t i = inf.first; i <= inf.last; ++i) {
    std::string& slot = labels[i].infraction;
    if (slot.empty()) {
      slot = inf.infraction_type;
    } else if (slot.find(inf.infraction_type) == std::string::npos) {
      slot += "; " + inf.infraction_type;
    }
  }
}

}  // namespace

std::vector<ConstraintTest> builtin_tests() {
  std::vector<ConstraintTest> tests;

  ConstraintTest t1;
  t1.name = "Excessive Driving without breaks";
  t1.infraction_type = "Excessive Driving without breaks";
  t1.window = TestWindow::Run;
  t1.conditions.push_back({TestMeasure::DrivingSum, TestOp::Gt, 0, "seq_driving_max", {}, false});
  tests.push_back(t1);

  ConstraintTest t2;
  t2.name = "Excessive Driving in day (NDD)";
  t2.infraction_type = "Surpassed NDD driving time";
  t2.window = TestWindow::Day;
  t2.conditions.push_back({TestMeasure::DrivingSum, TestOp::Gt, 0, "ndd_driving_max", {}, false});
  t2.conditions.push_back(
      {TestMeasure::EddCountWithCurrent, TestOp::Gt, 0, "edd_per_week_max", {}, false});
  tests.push_back(t2);

  ConstraintTest t3;
  t3.name = "Excessive Driving in day (EDD)";
  t3.infraction_type = "Excessive Driving in day (EDD)";
  t3.window = TestWindow::Day;
  t3.conditions.push_back({TestMeasure::DrivingSum, TestOp::Gt, 0, "edd_driving_max", {}, false});
  tests.push_back(t3);

  ConstraintTest t4;
  t4.name = "Missing other half of split daily rest";
  t4.infraction_type = "Missing other half of split daily rest";
  t4.window = TestWindow::DayPair;
  t4.conditions.push_back(
      {TestMeasure::PreviousTerminalToken, TestOp::Eq, 0, "", {Token::DR_T3}, false});
  t4.conditions.push_back({TestMeasure::TerminalToken,
                           TestOp::NotIn,
                           0,
                           "",
                           {Token::DR_T4, Token::WR_T1, Token::WR_T2},
                           false});
  tests.push_back(t4);

  ConstraintTest t5;
  t5.name = "Rest past the daily/weekly deadline";
  t5.infraction_type = "Rest past the daily/weekly deadline";
  t5.window = TestWindow::TerminalRest;
  t5.conditions.push_back({TestMeasure::TerminalToken,
                           TestOp::In,
                           0,
                           "",
                           {Token::DR_T1, Token::DR_T2, Token::DR_T3, Token::DR_T4, Token::WR_T1,
                            Token::WR_T2},
                           false});
  t5.conditions.push_back({TestMeasure::TerminalLegal, TestOp::Eq, 0, "", {}, false});
  t5.conditions.push_back({TestMeasure::ContextsResolved, TestOp::Eq, 0, "", {}, true});
  tests.push_back(t5);

  return tests;
}

std::vector<Infraction> evaluate_tests(std::vector<LabeledActivity>& labels,
                                       const std::vector<ConstraintTest>& tests,
                                       const RegulationParameters& params) {
  std::vector<Infraction> out;
  if (labels.empty()) return out;
  std::vector<DayGroup> groups = collect_groups(labels);

  std::map<std::pair<std::string, int>, std::set<int>> edd_days;
  for (const DayGroup& g : groups) {
    if (g.day_type == DayType::Edd) edd_days[{g.driver, g.week}].insert(g.day);
  }

  std::vector<bool> explained(groups.size(), false);

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const DayGroup& g = groups[gi];
    if (!g.needs_review) continue;
    const DayGroup* prev = nullptr;
    if (gi > 0 && groups[gi - 1].driver == g.driver) prev = &groups[gi - 1];

    for (const ConstraintTest& test : tests) {
      // Window instances: driving runs for Run, otherwise the group itself.
      std::vector<std::pair<std::size_t, std::size_t>> spans;
      if (test.window == TestWindow::Run) {
        std::size_t run_first = g.first;
        bool open = false;
        for (std::size_t i = g.first; i <= g.last; ++i) {
          if (completes_structure(labels[i].contexts.token)) {
            if (open) spans.push_back({run_first, i - 1});
            open = false;
            run_first = i + 1;
          } else if (!open) {
            run_first = i;
            open = true;
          }
        }
        if (open) spans.push_back({run_first, g.last});
      } else if (test.window == TestWindow::TerminalRest) {
        spans.push_back({g.last, g.last});
      } else {
        spans.push_back({g.first, g.last});
      }

      for (const auto& span : spans) {
        EvalContext ctx;
        ctx.labels = &labels;
        ctx.group = &g;
        ctx.previous = prev;
        ctx.span_first = span.first;
        ctx.span_last = span.second;
        ctx.edd_days = &edd_days;
        bool all = true;
        std::vector<std::string> summaries;
        for (const TestCondition& cond : test.conditions) {
          std::string summary;
          if (!eval_condition(cond, ctx, params, &summary)) {
            all = false;
            break;
          }
          if (!summary.empty()) summaries.push_back(summary);
        }
        if (!all) continue;
        Infraction inf;
        inf.infraction_type = test.infraction_type;
        inf.test_name = test.name;
        if (test.window == TestWindow::Run) {
          inf.first = span.first;
          inf.last = span.second;
        } else if (test.window == TestWindow::TerminalRest) {
          inf.first = g.last;
          inf.last = g.last;
        } else {
          inf.first = g.first;
          inf.last = g.last;
        }
        std::ostringstream why;
        why << "day " << g.day << ": ";
        for (std::size_t k = 0; k < summaries.size(); ++k) {
          if (k > 0) why << "; ";
          why << summaries[k];
        }
        inf.explanation = why.str();
        out.push_back(inf);
        write_back(labels, inf);
        explained[gi] = true;
      }
    }
  }

  // Days no test explains become an explicit open question over their
  // unresolved stretches.
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const DayGroup& g = groups[gi];
    if (!g.needs_review || explained[gi]) continue;
    std::size_t i = g.first;
    while (i <= g.last) {
      const ContextSet& c = labels[i].contexts;
      bool unresolved = !c.legal || c.day_type == DayType::Unknown;
      if (!unresolved) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 <= g.last) {
        const ContextSet& cn = labels[j + 1].contexts;
        if (!cn.legal || cn.day_type == DayType::Unknown) {
          ++j;
        } else {
          break;
        }
      }
      Infraction inf;
      inf.infraction_type = "Unexplained";
      inf.test_name = "Unexplained";
      inf.first = i;
      inf.last = j;
      inf.explanation = "day " + std::to_string(g.day) + ": no constraint test matched";
      out.push_back(inf);
      write_back(labels, inf);
      i = j + 1;
    }
  }

  std::stable_sort(out.begin(), out.end(),
                   [](const Infraction& a, const Infraction& b) { return a.first < b.first; });
  return out;
}

namespace {

std::string field_value(const ContextSet& c, int field) {
  switch (field) {
    case 0: return std::to_string(c.week);
    case 1: return std::to_string(c.day);
    case 2: return to_string(c.day_type);
    case 3: return to_string(c.sequence);
    case 4: return to_string(c.break_type);
    case 5: return to_string(c.token);
    default: return c.legal ? "yes" : "no";
  }
}

const char* const kFieldNames[7] = {"week",       "day",   "day_type", "sequence",
                                    "break_type", "token", "legal"};

}  // namespace

std::pair<std::vector<LabeledActivity>, std::vector<LabelChange>> relabel_relaxed(
    const DriverLog& log, const RegulationParameters& params, int epsilon_min) {
  if (epsilon_min < 0) throw std::invalid_argument("epsilon must be non-negative");
  std::vector<LabeledActivity> strict = label_log(log, params);
  if (epsilon_min == 0) return {strict, {}};
  std::vector<LabeledActivity> relaxed = label_log(log, relax(params, epsilon_min));
  std::vector<LabelChange> changes;
  for (std::size_t i = 0; i < strict.size(); ++i) {
    for (int f = 0; f < 7; ++f) {
      std::string before = field_value(strict[i].contexts, f);
      std::string after = field_value(relaxed[i].contexts, f);
      if (before == after) continue;
      LabelChange ch;
      ch.index = i;
      ch.field = kFieldNames[f];
      ch.before = before;
      ch.after = after;
      ch.legality_flip = f == 6 && before == "no" && after == "yes";
      changes.push_back(ch);
    }
  }
  return {relaxed, changes};
}

std::vector<RelaxationFinding> epsilon_sweep(const DriverLog& log,
                                             const RegulationParameters& params,
                                             const std::vector<int>& epsilons) {
  std::vector<int> order = epsilons;
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  std::vector<RelaxationFinding> findings;
  std::vector<bool> claimed(log.records.size(), false);
  for (int eps : order) {
    if (eps <= 0) continue;
    auto [relaxed, changes] = relabel_relaxed(log, params, eps);
    (void)relaxed;
    std::vector<bool> flipped(log.records.size(), false);
    for (const LabelChange& ch : changes) {
      if (ch.legality_flip) flipped[ch.index] = true;
    }
    std::size_t i = 0;
    while (i < flipped.size()) {
      if (!flipped[i]) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j + 1 < flipped.size() && flipped[j + 1]) ++j;
      bool fresh = false;
      for (std::size_t k = i; k <= j; ++k) fresh = fresh || !claimed[k];
      if (fresh) {
        RelaxationFinding f;
        f.epsilon = eps;
        f.first = i;
        f.last = j;
        for (const LabelChange& ch : changes) {
          if (ch.index >= i && ch.index <= j) f.changes.push_back(ch);
        }
        findings.push_back(f);
        for (std::size_t k = i; k <= j; ++k) claimed[k] = true;
      }
      i = j + 1;
    }
  }
  return findings;
}

namespace {

nlohmann::json span_json(const std::vector<LabeledActivity>& labels, std::size_t first,
                         std::size_t last) {
  return {{"first_start", format_timestamp(labels[first].record.start)},
          {"last_end", format_timestamp(labels[last].record.end)}};
}

bool overlaps(std::size_t a1, std::size_t a2, std::size_t b1, std::size_t b2) {
  return a1 <= b2 && b1 <= a2;
}

nlohmann::json driver_report(const DriverReportInput& in) {
  const auto& labels = *in.labels;
  nlohmann::json findings = nlohmann::json::array();
  for (const Infraction& inf : in.infractions) {
    if (inf.infraction_type == "Unexplained") {
      bool explained = false;
      for (const RelaxationFinding& f : in.findings) {
        if (overlaps(inf.first, inf.last, f.first, f.last)) {
          explained = true;
          break;
        }
      }
      if (explained) continue;
    }
    nlohmann::json j;
    j["type"] = inf.infraction_type;
    j["source"] = "test";
    j["span"] = span_json(labels, inf.first, inf.last);
    j["test_name"] = inf.test_name;
    j["explanation"] = inf.explanation;
    findings.push_back(j);
  }
  for (const RelaxationFinding& f : in.findings) {
    nlohmann::json j;
    j["type"] = "borderline_break";
    j["source"] = "relaxation";
    j["span"] = span_json(labels, f.first, f.last);
    j["epsilon"] = f.epsilon;
    nlohmann::json changes = nlohmann::json::array();
    for (const LabelChange& ch : f.changes) {
      changes.push_back({{"index", ch.index},
                         {"field", ch.field},
                         {"before", ch.before},
                         {"after", ch.after},
                         {"legality_flip", ch.legality_flip}});
    }
    j["changes"] = changes;
    j["explanation"] = "labels become legal when limits are relaxed by " +
                       std::to_string(f.epsilon) + " min";
    findings.push_back(j);
  }
  return {{"driver", in.driver}, {"findings", findings}};
}

}  // namespace

std::string render_report_json(const std::vector<DriverReportInput>& inputs) {
  nlohmann::json report = nlohmann::json::array();
  for (const DriverReportInput& in : inputs) report.push_back(driver_report(in));
  return report.dump(2) + "\n";
}

std::string render_report_text(const std::vector<DriverReportInput>& inputs) {
  std::ostringstream out;
  for (const DriverReportInput& in : inputs) {
    nlohmann::json j = driver_report(in);
    out << "driver " << in.driver << '\n';
    if (j["findings"].empty()) {
      out << "  no findings\n";
      continue;
    }
    for (const auto& f : j["findings"]) {
      out << "  [" << f["source"].get<std::string>() << "] " << f["type"].get<std::string>()
          << " " << f["span"]["first_start"].get<std::string>() << " .. "
          << f["span"]["last_end"].get<std::string>();
      if (f.contains("epsilon")) out << " (epsilon " << f["epsilon"].get<int>() << ")";
      out << '\n';
      out << "    " << f["explanation"].get<std::string>() << '\n';
    }
  }
  return out.str();
}

namespace {

TestWindow window_from_string(const std::string& s) {
  if (s == "run") return TestWindow::Run;
  if (s == "day") return TestWindow::Day;
  if (s == "day_pair") return TestWindow::DayPair;
  if (s == "terminal_rest") return TestWindow::TerminalRest;
  throw ConfigError("unknown test window \"" + s + "\"");
}

TestMeasure measure_from_string(const std::string& s) {
  if (s == "driving_sum") return TestMeasure::DrivingSum;
  if (s == "terminal_token") return TestMeasure::TerminalToken;
  if (s == "previous_terminal_token") return TestMeasure::PreviousTerminalToken;
  if (s == "edd_count_with_current") return TestMeasure::EddCountWithCurrent;
  if (s == "contexts_resolved") return TestMeasure::ContextsResolved;
  if (s == "terminal_legal") return TestMeasure::TerminalLegal;
  throw ConfigError("unknown test measure \"" + s + "\"");
}

TestOp op_from_string(const std::string& s) {
  if (s == "gt") return TestOp::Gt;
  if (s == "ge") return TestOp::Ge;
  if (s == "lt") return TestOp::Lt;
  if (s == "le") return TestOp::Le;
  if (s == "eq") return TestOp::Eq;
  if (s == "ne") return TestOp::Ne;
  if (s == "in") return TestOp::In;
  if (s == "not_in") return TestOp::NotIn;
  throw ConfigError("unknown test operator \"" + s + "\"");
}

bool token_measure(TestMeasure m) {
  return m == TestMeasure::TerminalToken || m == TestMeasure::PreviousTerminalToken;
}

bool boolean_measure(TestMeasure m) {
  return m == TestMeasure::ContextsResolved || m == TestMeasure::TerminalLegal;
}

}  // namespace

std::vector<ConstraintTest> tests_from_json_text(const std::string& text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("test configuration is not valid JSON: ") + e.what());
  }
  if (!root.is_object() || !root.contains("tests") || !root["tests"].is_array()) {
    throw ConfigError("test configuration must be an object with a \"tests\" array");
  }
  std::vector<ConstraintTest> tests;
  for (const auto& jt : root["tests"]) {
    if (!jt.is_object()) throw ConfigError("each test must be an object");
    ConstraintTest t;
    if (!jt.contains("name") || !jt["name"].is_string()) {
      throw ConfigError("test requires a string \"name\"");
    }
    t.name = jt["name"].get<std::string>();
    t.infraction_type =
        jt.contains("infraction_type") ? jt["infraction_type"].get<std::string>() : t.name;
    if (!jt.contains("window") || !jt["window"].is_string()) {
      throw ConfigError("test \"" + t.name + "\" requires a string \"window\"");
    }
    t.window = window_from_string(jt["window"].get<std::string>());
    if (!jt.contains("conditions") || !jt["conditions"].is_array() || jt["conditions"].empty()) {
      throw ConfigError("test \"" + t.name + "\" requires a non-empty \"conditions\" array");
    }
    for (const auto& jc : jt["conditions"]) {
      TestCondition c;
      c.measure = measure_from_string(jc.at("measure").get<std::string>());
      c.op = op_from_string(jc.at("op").get<std::string>());
      if (token_measure(c.measure)) {
        const auto& v = jc.at("value");
        if (v.is_string()) {
          c.tokens.push_back(token_from_string(v.get<std::string>()));
        } else if (v.is_array()) {
          for (const auto& e : v) c.tokens.push_back(token_from_string(e.get<std::string>()));
        } else {
          throw ConfigError("token condition value must be a token name or list");
        }
      } else if (boolean_measure(c.measure)) {
        c.flag = jc.at("value").get<bool>();
      } else {
        const auto& v = jc.at("value");
        if (v.is_string()) {
          c.parameter = v.get<std::string>();
          param_value(c.parameter, RegulationParameters{});  // validates the name
        } else if (v.is_number_integer()) {
          c.number = v.get<std::int64_t>();
        } else {
          throw ConfigError("numeric condition value must be an integer or parameter name");
        }
      }
      t.conditions.push_back(c);
    }
    tests.push_back(t);
  }
  return tests;
}

std::vector<ConstraintTest> load_tests(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return tests_from_json_text(ss.str());
}

}  // namespace hos
