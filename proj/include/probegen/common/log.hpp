#pragma once

#include <spdlog/spdlog.h>

#include <string>
#include <string_view>

namespace probegen {

// Shared toolkit logger (stderr). Tests silence it with set_log_level("off").
spdlog::logger& log();
void set_log_level(std::string_view level);

// Replaces every occurrence of `secret` in `s` with "***".
std::string redact(std::string s, std::string_view secret);

}  // namespace probegen
