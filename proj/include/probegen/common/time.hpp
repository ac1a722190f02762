#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace probegen {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

// "2023-11-01T00:00:00.000Z"
std::string format_utc(Timestamp ts);

// Accepts "YYYY-MM-DDTHH:MM:SS[.mmm]Z" and "YYYY-MM-DD HH:MM:SS". Throws ConfigError.
Timestamp parse_utc(std::string_view s);

Timestamp now_utc();

double days_between(Timestamp from, Timestamp to);

}  // namespace probegen
