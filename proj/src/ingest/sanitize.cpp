#include "probegen/ingest/sanitize.hpp"

#include <algorithm>
#include <fstream>

#include "probegen/common/error.hpp"
#include "probegen/common/text.hpp"
#include "probegen/common/url.hpp"
#include "probegen/ingest/content_free.hpp"

namespace probegen::ingest {

void PageSnapshot::set_body(std::string text) {
    body_text = std::move(text);
    char_count = text::scalar_count(body_text);
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::live: return "live";
        case Verdict::dead_redirect: return "dead_redirect";
        case Verdict::dead_4xx: return "dead_4xx";
        case Verdict::dead_5xx: return "dead_5xx";
        case Verdict::content_free: return "content_free";
        case Verdict::too_short: return "too_short";
    }
    return "live";
}

std::unordered_set<std::string> load_domain_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read domain list " + path.string());
    }
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto t = text::trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        out.insert(text::ascii_lower(t));
    }
    return out;
}

namespace {

bool listed(const std::unordered_set<std::string>& domains, std::string_view host) {
    // Walk the host's parent domains: a.b.example.com, b.example.com, example.com, com.
    std::string_view h = host;
    for (;;) {
        if (domains.contains(std::string(h))) {
            return true;
        }
        auto dot = h.find('.');
        if (dot == std::string_view::npos) {
            return false;
        }
        h.remove_prefix(dot + 1);
    }
}

template <std::size_t N>
bool contains(const std::array<int, N>& codes, int code) {
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

}  // namespace

SanitizationVerdict classify_dead(const PageSnapshot& snapshot, const RedirectChain& redirects,
                                  const SanitizeConfig& config) {
    SanitizationVerdict v{snapshot.url, Verdict::live, ""};

    if (redirects.loop) {
        v.verdict = Verdict::dead_redirect;
        v.reason = "redirect loop";
        return v;
    }
    if (static_cast<int>(redirects.hops.size()) > config.max_redirects) {
        v.verdict = Verdict::dead_redirect;
        v.reason = "excessive redirects (" + std::to_string(redirects.hops.size()) + " > " +
                   std::to_string(config.max_redirects) + ")";
        return v;
    }
    for (const auto& hop : redirects.hops) {
        auto target = parse_url(hop);
        if (!target) {
            v.verdict = Verdict::dead_redirect;
            v.reason = "malformed redirect target '" + hop + "'";
            return v;
        }
        if (listed(config.seller_domains, target->host)) {
            v.verdict = Verdict::dead_redirect;
            v.reason = "redirect to domain seller " + target->host;
            return v;
        }
        if (listed(config.suspicious_domains, target->host)) {
            v.verdict = Verdict::dead_redirect;
            v.reason = "redirect to suspicious domain " + target->host;
            return v;
        }
    }

    if (const auto* http = std::get_if<HttpCode>(&snapshot.status)) {
        int code = http->code;
        if (code >= 400 && code <= 499 && !contains(kTolerated4xx, code)) {
            v.verdict = Verdict::dead_4xx;
            v.reason = "status " + std::to_string(code);
        } else if (code >= 500 && code <= 599 && !contains(kTolerated5xx, code)) {
            v.verdict = Verdict::dead_5xx;
            v.reason = "status " + std::to_string(code);
        }
    }
    return v;
}

bool filter_min_length(std::string_view body_text, std::size_t min_chars) {
    return text::scalar_count(body_text) >= min_chars;
}

SanitizationVerdict sanitize(const PageSnapshot& snapshot, const RedirectChain& redirects,
                             const ContentFreeRules& content_rules, const SanitizeConfig& config) {
    auto v = classify_dead(snapshot, redirects, config);
    if (v.verdict != Verdict::live) {
        return v;
    }
    if (auto hit = content_rules.match(snapshot.body_text, snapshot.final_url)) {
        v.verdict = Verdict::content_free;
        v.reason = "matched " + hit->pattern_class + ": " + hit->pattern;
        return v;
    }
    if (!filter_min_length(snapshot.body_text, config.min_chars)) {
        v.verdict = Verdict::too_short;
        v.reason = std::to_string(snapshot.char_count) + " chars < " + std::to_string(config.min_chars);
        if (const auto* t = std::get_if<TransportFailure>(&snapshot.status)) {
            v.reason += " (transport error: " + t->tag + ")";
        }
    }
    return v;
}

Json to_json(const SanitizationVerdict& v, std::size_t char_count) {
    Json j;
    j["url"] = v.url;
    j["verdict"] = std::string(to_string(v.verdict));
    j["reason"] = v.reason;
    j["char_count"] = char_count;
    return j;
}

}  // namespace probegen::ingest
