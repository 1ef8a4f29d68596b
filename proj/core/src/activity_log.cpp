#include "hos/activity_log.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace hos {

std::string to_string(ActivityKind kind) {
  switch (kind) {
    case ActivityKind::Driving: return "Driving";
    case ActivityKind::Other: return "Other";
    case ActivityKind::Break: return "Break";
    case ActivityKind::Idle: return "Idle";
  }
  return "?";
}

ActivityKind activity_kind_from_string(const std::string& text) {
  if (text == "Driving") return ActivityKind::Driving;
  if (text == "Other") return ActivityKind::Other;
  if (text == "Break") return ActivityKind::Break;
  if (text == "Idle") return ActivityKind::Idle;
  throw std::invalid_argument("unknown activity kind \"" + text + "\"");
}

namespace {

std::string compose(const std::string& message, std::size_t row, const std::string& driver) {
  if (row == 0) return message;
  std::string out = "row " + std::to_string(row);
  if (!driver.empty()) out += " (driver " + driver + ")";
  out += ": " + message;
  return out;
}

}  // namespace

InputError::InputError(const std::string& message, std::size_t row, std::string driver)
    : std::runtime_error(compose(message, row, driver)), row_(row), driver_(std::move(driver)) {}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

constexpr const char* kHeader = "Driver,Start,End,Duration,Activity";

}  // namespace

std::vector<DriverLog> parse_log(std::istream& in, const ParseOptions& options) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty input, expected header " + std::string(kHeader));
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader)
    throw InputError("bad header \"" + line + "\", expected " + std::string(kHeader), 1);

  struct Row {
    ActivityRecord record;
    std::size_t row;
  };
  std::map<std::string, std::vector<Row>> by_driver;
  std::size_t row_no = 1;
  while (std::getline(in, line)) {
    ++row_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 5)
      throw InputError("expected 5 fields, got " + std::to_string(fields.size()), row_no);
    ActivityRecord rec;
    rec.driver_id = fields[0];
    if (rec.driver_id.empty()) throw InputError("empty driver id", row_no);
    try {
      rec.start = parse_timestamp(fields[1]);
      rec.end = parse_timestamp(fields[2]);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what(), row_no, rec.driver_id);
    }
    try {
      std::size_t used = 0;
      rec.duration_min = std::stoi(fields[3], &used);
      if (used != fields[3].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw InputError("bad duration \"" + fields[3] + "\"", row_no, rec.driver_id);
    }
    try {
      rec.kind = activity_kind_from_string(fields[4]);
    } catch (const std::invalid_argument& e) {
      throw InputError(e.what(), row_no, rec.driver_id);
    }
    if (rec.end <= rec.start)
      throw InputError("end is not after start", row_no, rec.driver_id);
    if (static_cast<Minutes>(rec.duration_min) != rec.end - rec.start)
      throw InputError("duration mismatch: stated " + std::to_string(rec.duration_min) +
                           ", end-start is " + std::to_string(rec.end - rec.start),
                       row_no, rec.driver_id);
    by_driver[rec.driver_id].push_back({std::move(rec), row_no});
  }

  std::vector<DriverLog> logs;
  logs.reserve(by_driver.size());
  for (auto& [driver, rows] : by_driver) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const Row& a, const Row& b) { return a.record.start < b.record.start; });
    DriverLog log;
    log.driver_id = driver;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i > 0) {
        const ActivityRecord& prev = log.records.back();
        const ActivityRecord& cur = rows[i].record;
        if (cur.start < prev.end)
          throw InputError("overlaps previous record ending " + format_timestamp(prev.end),
                           rows[i].row, driver);
        if (cur.start > prev.end) {
          if (!options.fill_gaps)
            throw InputError("gap before record: previous ends " + format_timestamp(prev.end) +
                                 ", next starts " + format_timestamp(cur.start),
                             rows[i].row, driver);
          ActivityRecord idle;
          idle.driver_id = driver;
          idle.start = prev.end;
          idle.end = cur.start;
          idle.duration_min = static_cast<int>(cur.start - prev.end);
          idle.kind = ActivityKind::Idle;
          log.records.push_back(std::move(idle));
        }
      }
      log.records.push_back(rows[i].record);
    }
    logs.push_back(std::move(log));
  }
  return logs;
}

std::vector<DriverLog> parse_log_file(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return parse_log(in, options);
}

void serialize(const DriverLog& log, std::ostream& out) {
  out << kHeader << '\n';
  for (const ActivityRecord& rec : log.records) {
    out << rec.driver_id << ',' << format_timestamp(rec.start) << ',' << format_timestamp(rec.end)
        << ',' << rec.duration_min << ',' << to_string(rec.kind) << '\n';
  }
}

void serialize(const std::vector<DriverLog>& logs, std::ostream& out) {
  out << kHeader << '\n';
  std::vector<const DriverLog*> ordered;
  ordered.reserve(logs.size());
  for (const DriverLog& log : logs) ordered.push_back(&log);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const DriverLog* a, const DriverLog* b) { return a->driver_id < b->driver_id; });
  for (const DriverLog* log : ordered)
    for (const ActivityRecord& rec : log->records) {
      out << rec.driver_id << ',' << format_timestamp(rec.start) << ','
          << format_timestamp(rec.end) << ',' << rec.duration_min << ',' << to_string(rec.kind)
          << '\n';
    }
}

DriverLog merge_contiguous(const DriverLog& log) {
  DriverLog out;
  out.driver_id = log.driver_id;
  for (const ActivityRecord& rec : log.records) {
    if (!out.records.empty() && out.records.back().kind == rec.kind &&
        out.records.back().end == rec.start) {
      ActivityRecord& last = out.records.back();
      last.end = rec.end;
      last.duration_min += rec.duration_min;
    } else {
      out.records.push_back(rec);
    }
  }
  return out;
}

}  // namespace hos
