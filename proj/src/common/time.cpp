#include "probegen/common/time.hpp"

#include <cstdio>

#include "probegen/common/error.hpp"

namespace probegen {

using namespace std::chrono;

std::string format_utc(Timestamp ts) {
    auto day = floor<days>(ts);
    year_month_day ymd{day};
    hh_mm_ss hms{ts - day};
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                  static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                  static_cast<int>(hms.seconds().count()), static_cast<int>(hms.subseconds().count()));
    return buf;
}

Timestamp parse_utc(std::string_view s) {
    int y = 0;
    unsigned mo = 0;
    unsigned d = 0;
    int h = 0;
    int mi = 0;
    int sec = 0;
    int ms = 0;
    std::string str(s);
    char sep = 0;
    int n = std::sscanf(str.c_str(), "%d-%u-%u%c%d:%d:%d.%d", &y, &mo, &d, &sep, &h, &mi, &sec, &ms);
    if (n == 3) {
        h = mi = sec = 0;
    } else if (n < 7 || (sep != 'T' && sep != ' ')) {
        throw ConfigError("invalid UTC timestamp: " + str);
    }
    year_month_day ymd{year{y}, month{mo}, day{d}};
    if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0 || sec > 60) {
        throw ConfigError("invalid UTC timestamp: " + str);
    }
    return sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} + milliseconds{n >= 8 ? ms : 0};
}

Timestamp now_utc() { return time_point_cast<milliseconds>(system_clock::now()); }

double days_between(Timestamp from, Timestamp to) {
    return duration<double, std::ratio<86400>>(to - from).count();
}

}  // namespace probegen
