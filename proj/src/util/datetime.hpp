#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace chainsent {

// Seconds since 1970-01-01T00:00:00Z.
using EpochSeconds = std::int64_t;
// Days since 1970-01-01 (UTC calendar day).
using EpochDay = std::int32_t;

// Accepts "YYYY-MM-DDTHH:MM:SS" and "YYYY-MM-DD HH:MM:SS", optionally
// suffixed by "Z" or "+00:00". Anything else (including other offsets) fails.
std::optional<EpochSeconds> parse_iso8601_utc(std::string_view s);

// "YYYY-MM-DD" only.
std::optional<EpochDay> parse_date(std::string_view s);

EpochDay day_of(EpochSeconds t);

std::string format_date(EpochDay day);
std::string format_iso8601_utc(EpochSeconds t);

} // namespace chainsent
