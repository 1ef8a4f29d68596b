#pragma once

#include <cstdint>
#include <string>

namespace hos {

// Minutes since 1970-01-01 00:00 (civil time, no zone handling).
using Minutes = std::int64_t;

// Accepts "DD/MM/YYYY HH:MM" and "YYYY-MM-DDTHH:MM".
// Throws std::invalid_argument on anything else (including invalid dates).
Minutes parse_timestamp(const std::string& text);

// Canonical form: "YYYY-MM-DDTHH:MM".
std::string format_timestamp(Minutes t);

}  // namespace hos
