#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace probegen {

// Absolute http(s) URL split into the pieces the pipeline needs.
struct Url {
    std::string scheme;  // lowercase "http" or "https"
    std::string host;    // lowercase, no trailing dot, brackets kept for IPv6
    int port = 0;        // 0 when absent
    std::string target;  // path + query + fragment, "/" when empty

    std::string str() const;
};

// nullopt for anything that is not an absolute http(s) URL with a plausible host.
std::optional<Url> parse_url(std::string_view raw);

// Host of an absolute URL, or empty string.
std::string host_of(std::string_view raw);

// True when `host` equals `domain` or is a subdomain of it.
bool host_within(std::string_view host, std::string_view domain);

}  // namespace probegen
