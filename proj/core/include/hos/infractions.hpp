#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hos/labeller.hpp"
#include "hos/regulation.hpp"

namespace hos {

enum class TestWindow { Run, Day, DayPair, TerminalRest };
enum class TestMeasure {
  DrivingSum,
  TerminalToken,
  PreviousTerminalToken,
  EddCountWithCurrent,
  ContextsResolved,
  TerminalLegal,
};
enum class TestOp { Gt, Ge, Lt, Le, Eq, Ne, In, NotIn };

// One conjunct of a constraint test. Numeric conditions may reference a
// regulation parameter by name instead of a literal so thresholds follow the
// active parameter set.
struct TestCondition {
  TestMeasure measure = TestMeasure::DrivingSum;
  TestOp op = TestOp::Gt;
  std::int64_t number = 0;
  std::string parameter;       // regulation field name; overrides number when set
  std::vector<Token> tokens;   // payload for token-valued measures
  bool flag = false;           // payload for boolean measures
};

struct ConstraintTest {
  std::string name;
  std::string infraction_type;  // text reported on matching activities
  TestWindow window = TestWindow::Day;
  std::vector<TestCondition> conditions;
};

// The five built-in day-level checks, thresholds bound to parameter names.
std::vector<ConstraintTest> builtin_tests();

// Declarative test definitions from JSON ({"tests":[...]}). Throws ConfigError.
std::vector<ConstraintTest> tests_from_json_text(const std::string& text);
std::vector<ConstraintTest> load_tests(std::istream& in);

struct Infraction {
  std::string infraction_type;
  std::string test_name;
  std::size_t first = 0;  // inclusive index range into the labelled activities
  std::size_t last = 0;
  std::string explanation;
};

// Runs the tests over every day group that contains unknown contexts or
// illegal activities, writes the matched infraction text onto the spanned
// entries (idempotently) and returns the findings. Days no test explains
// yield an "Unexplained" finding over their unresolved stretches.
std::vector<Infraction> evaluate_tests(std::vector<LabeledActivity>& labels,
                                       const std::vector<ConstraintTest>& tests,
                                       const RegulationParameters& params);

struct LabelChange {
  std::size_t index = 0;
  std::string field;
  std::string before;
  std::string after;
  bool legality_flip = false;  // this change turns an illegal activity legal
};

// Labels the log under parameters relaxed by epsilon minutes and reports the
// positional differences against the strict labelling. epsilon = 0 yields the
// strict labels and no changes.
std::pair<std::vector<LabeledActivity>, std::vector<LabelChange>> relabel_relaxed(
    const DriverLog& log, const RegulationParameters& params, int epsilon_min);

struct RelaxationFinding {
  int epsilon = 0;
  std::size_t first = 0;  // inclusive index range that flipped legal
  std::size_t last = 0;
  std::vector<LabelChange> changes;
};

// Ascending relaxation sweep; each legality-flipped region is attributed to
// the smallest epsilon that flips it.
std::vector<RelaxationFinding> epsilon_sweep(const DriverLog& log,
                                             const RegulationParameters& params,
                                             const std::vector<int>& epsilons);

struct DriverReportInput {
  std::string driver;
  const std::vector<LabeledActivity>* labels = nullptr;
  std::vector<Infraction> infractions;
  std::vector<RelaxationFinding> findings;
};

// JSON array with one object per driver: test findings plus relaxation
// findings; "Unexplained" entries that a relaxation finding covers are
// dropped. The text form renders the same content for terminals.
std::string render_report_json(const std::vector<DriverReportInput>& inputs);
std::string render_report_text(const std::vector<DriverReportInput>& inputs);

}  // namespace hos
