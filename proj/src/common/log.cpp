#include "probegen/common/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>

namespace probegen {

spdlog::logger& log() {
    static auto logger = [] {
        auto l = spdlog::stderr_color_mt("probegen");
        l->set_pattern("%Y-%m-%dT%H:%M:%S.%e %^%l%$ %v");
        return l;
    }();
    return *logger;
}

void set_log_level(std::string_view level) {
    log().set_level(spdlog::level::from_str(std::string(level)));
}

std::string redact(std::string s, std::string_view secret) {
    if (secret.empty()) {
        return s;
    }
    std::size_t pos = 0;
    while ((pos = s.find(secret, pos)) != std::string::npos) {
        s.replace(pos, secret.size(), "***");
        pos += 3;
    }
    return s;
}

}  // namespace probegen
