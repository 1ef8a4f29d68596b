#include "hos/time.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace hos {
namespace {

// Days between 1970-01-01 and y-m-d, proleptic Gregorian (Howard Hinnant's
// civil-time algorithm).
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct Civil {
  std::int64_t year;
  unsigned month, day;
};

constexpr Civil civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;
  return {y + (m <= 2), m, d};
}

constexpr bool is_leap(std::int64_t y) {
  return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

constexpr unsigned days_in_month(std::int64_t y, unsigned m) {
  constexpr unsigned lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29u : lengths[m - 1];
}

bool all_digits(const std::string& s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) return false;
  for (std::size_t i = pos; i < pos + n; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

int num(const std::string& s, std::size_t pos, std::size_t n) {
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) v = v * 10 + (s[i] - '0');
  return v;
}

[[noreturn]] void bad(const std::string& text) {
  throw std::invalid_argument("invalid timestamp: \"" + text + "\"");
}

Minutes from_fields(std::int64_t year, int month, int day, int hour, int minute,
                    const std::string& text) {
  if (month < 1 || month > 12) bad(text);
  if (day < 1 || static_cast<unsigned>(day) > days_in_month(year, static_cast<unsigned>(month)))
    bad(text);
  if (hour > 23 || minute > 59) bad(text);
  return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 1440 +
         hour * 60 + minute;
}

}  // namespace

Minutes parse_timestamp(const std::string& text) {
  // "DD/MM/YYYY HH:MM"
  if (text.size() == 16 && text[2] == '/' && text[5] == '/' && text[10] == ' ' &&
      text[13] == ':' && all_digits(text, 0, 2) && all_digits(text, 3, 2) &&
      all_digits(text, 6, 4) && all_digits(text, 11, 2) && all_digits(text, 14, 2)) {
    return from_fields(num(text, 6, 4), num(text, 3, 2), num(text, 0, 2), num(text, 11, 2),
                       num(text, 14, 2), text);
  }
  // "YYYY-MM-DDTHH:MM"
  if (text.size() == 16 && text[4] == '-' && text[7] == '-' && text[10] == 'T' &&
      text[13] == ':' && all_digits(text, 0, 4) && all_digits(text, 5, 2) &&
      all_digits(text, 8, 2) && all_digits(text, 11, 2) && all_digits(text, 14, 2)) {
    return from_fields(num(text, 0, 4), num(text, 5, 2), num(text, 8, 2), num(text, 11, 2),
                       num(text, 14, 2), text);
  }
  bad(text);
}

std::string format_timestamp(Minutes t) {
  std::int64_t days = t / 1440;
  std::int64_t rem = t % 1440;
  if (rem < 0) {
    rem += 1440;
    --days;
  }
  const Civil c = civil_from_days(days);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld",
                static_cast<long long>(c.year), c.month, c.day,
                static_cast<long long>(rem / 60), static_cast<long long>(rem % 60));
  return buf;
}

}  // namespace hos
