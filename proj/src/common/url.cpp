#include "probegen/common/url.hpp"

#include "probegen/common/text.hpp"

namespace probegen {

namespace {

bool valid_host_char(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.' || c == '_' || c >= 0x80;
}

}  // namespace

std::string Url::str() const {
    std::string out = scheme + "://" + host;
    if (port != 0) {
        out += ":" + std::to_string(port);
    }
    out += target;
    return out;
}

std::optional<Url> parse_url(std::string_view raw) {
    auto sep = raw.find("://");
    if (sep == std::string_view::npos) {
        return std::nullopt;
    }
    Url u;
    u.scheme = text::ascii_lower(raw.substr(0, sep));
    if (u.scheme != "http" && u.scheme != "https") {
        return std::nullopt;
    }
    std::string_view rest = raw.substr(sep + 3);
    auto end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, end);
    u.target = end == std::string_view::npos ? "/" : std::string(rest.substr(end));
    if (u.target.front() != '/') {
        u.target.insert(u.target.begin(), '/');
    }
    if (auto at = authority.rfind('@'); at != std::string_view::npos) {
        authority = authority.substr(at + 1);
    }
    std::string_view host = authority;
    if (!authority.empty() && authority.front() == '[') {
        auto close = authority.find(']');
        if (close == std::string_view::npos) {
            return std::nullopt;
        }
        host = authority.substr(0, close + 1);
        authority = authority.substr(close + 1);
        if (!authority.empty() && authority.front() != ':') {
            return std::nullopt;
        }
        if (!authority.empty()) {
            authority = authority.substr(1);
        }
    } else {
        auto colon = authority.rfind(':');
        if (colon != std::string_view::npos) {
            host = authority.substr(0, colon);
            authority = authority.substr(colon + 1);
        } else {
            authority = {};
        }
    }
    if (!authority.empty()) {
        int port = 0;
        for (char c : authority) {
            if (c < '0' || c > '9') {
                return std::nullopt;
            }
            port = port * 10 + (c - '0');
            if (port > 65535) {
                return std::nullopt;
            }
        }
        u.port = port;
    }
    if (host.empty()) {
        return std::nullopt;
    }
    u.host = text::ascii_lower(host);
    if (u.host.front() != '[') {
        if (u.host.back() == '.') {
            u.host.pop_back();
        }
        if (u.host.empty() || u.host.front() == '.' || u.host.find("..") != std::string::npos) {
            return std::nullopt;
        }
        for (unsigned char c : u.host) {
            if (!valid_host_char(c)) {
                return std::nullopt;
            }
        }
    }
    for (unsigned char c : u.target) {
        if (c <= 0x20 || c == 0x7f) {
            return std::nullopt;
        }
    }
    return u;
}

std::string host_of(std::string_view raw) {
    auto u = parse_url(raw);
    return u ? u->host : std::string();
}

bool host_within(std::string_view host, std::string_view domain) {
    if (domain.empty() || host.size() < domain.size()) {
        return false;
    }
    if (host == domain) {
        return true;
    }
    return host.ends_with(domain) && host[host.size() - domain.size() - 1] == '.';
}

}  // namespace probegen
