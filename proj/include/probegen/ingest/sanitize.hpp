#pragma once

#include <array>
#include <string>
#include <string_view>
#include <unordered_set>
#include <variant>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/common/time.hpp"

namespace probegen::ingest {

class ContentFreeRules;

struct HttpCode {
    int code = 0;
};

// Fetch never produced an HTTP response. `tag` names the failure ("dns",
// "connect", "timeout", ...); `code` carries the transfer-tool exit code.
struct TransportFailure {
    std::string tag;
    int code = 0;
};

using PageStatus = std::variant<HttpCode, TransportFailure>;

struct PageSnapshot {
    std::string url;
    std::string final_url;
    PageStatus status = HttpCode{};
    std::string body_text;
    std::size_t char_count = 0;  // Unicode scalar values in body_text
    Timestamp fetched_at{};

    void set_body(std::string text);
};

// Location targets in the order they were followed. `loop` is set when a
// target repeated.
struct RedirectChain {
    std::vector<std::string> hops;
    bool loop = false;
};

enum class Verdict { live, dead_redirect, dead_4xx, dead_5xx, content_free, too_short };

std::string_view to_string(Verdict v);

struct SanitizationVerdict {
    std::string url;
    Verdict verdict = Verdict::live;
    std::string reason;
};

struct SanitizeConfig {
    int max_redirects = 20;
    std::size_t min_chars = 300;
    std::unordered_set<std::string> seller_domains;
    std::unordered_set<std::string> suspicious_domains;
};

// 4xx / 5xx codes that do not mark a page dead (the server answered in a way
// that can still indicate blocking or a transient condition).
inline constexpr std::array<int, 10> kTolerated4xx{403, 404, 405, 406, 408, 412, 414, 415, 423, 429};
inline constexpr std::array<int, 10> kTolerated5xx{500, 501, 502, 503, 504, 505, 508, 511, 520, 591};

// Loads a one-domain-per-line list ('#' comments).
std::unordered_set<std::string> load_domain_list(const std::filesystem::path& path);

// Dead-page rules: invalid redirect chain first, then status code.
// Returns a `live` verdict when neither rule fires.
SanitizationVerdict classify_dead(const PageSnapshot& snapshot, const RedirectChain& redirects,
                                  const SanitizeConfig& config);

// Keep iff the text has at least `min_chars` Unicode scalar values.
bool filter_min_length(std::string_view body_text, std::size_t min_chars = 300);

// Full rule chain in fixed order: dead-redirect, dead-status, content-free, too-short.
SanitizationVerdict sanitize(const PageSnapshot& snapshot, const RedirectChain& redirects,
                             const ContentFreeRules& content_rules, const SanitizeConfig& config);

// {url, verdict, reason, char_count}
Json to_json(const SanitizationVerdict& v, std::size_t char_count);

}  // namespace probegen::ingest
