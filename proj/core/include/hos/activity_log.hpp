#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hos/time.hpp"

namespace hos {

enum class ActivityKind { Driving, Other, Break, Idle };

std::string to_string(ActivityKind kind);
// Exact match on "Driving" / "Other" / "Break" / "Idle"; throws std::invalid_argument.
ActivityKind activity_kind_from_string(const std::string& text);

struct ActivityRecord {
  std::string driver_id;
  Minutes start = 0;
  Minutes end = 0;
  int duration_min = 0;
  ActivityKind kind = ActivityKind::Other;

  bool operator==(const ActivityRecord&) const = default;
};

struct DriverLog {
  std::string driver_id;
  std::vector<ActivityRecord> records;

  bool operator==(const DriverLog&) const = default;
};

// Parse or validation failure. row is 1-based and counts the header line;
// row 0 means "no specific row".
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& message, std::size_t row = 0, std::string driver = "");
  std::size_t row() const noexcept { return row_; }
  const std::string& driver() const noexcept { return driver_; }

 private:
  std::size_t row_;
  std::string driver_;
};

struct ParseOptions {
  bool fill_gaps = false;  // insert synthetic Idle records over gaps instead of failing
};

// CSV with header Driver,Start,End,Duration,Activity. Returns one validated
// DriverLog per driver, drivers ordered by id, records stable-sorted by start.
std::vector<DriverLog> parse_log(std::istream& in, const ParseOptions& options = {});
std::vector<DriverLog> parse_log_file(const std::string& path, const ParseOptions& options = {});

// Emits the same five columns; timestamps in canonical ISO form.
void serialize(const DriverLog& log, std::ostream& out);
void serialize(const std::vector<DriverLog>& logs, std::ostream& out);

// Collapses consecutive records of identical kind into one; durations add up.
DriverLog merge_contiguous(const DriverLog& log);

}  // namespace hos
