#pragma once

#include <chrono>
#include <functional>
#include <string>

#include "probegen/crawl/search.hpp"
#include "probegen/expand/clients.hpp"
#include "probegen/nlp/translate.hpp"

namespace probegen::http {

// Value of a credential variable. Throws ConfigError naming the variable (never
// the value) when it is unset or empty.
std::string env_secret(const std::string& var);

struct HttpOptions {
    std::string base_url;  // scheme://host[:port]; empty: the provider's public endpoint
    int timeout_s = 30;
    int max_attempts = 3;  // transport failures and 5xx are retried
    std::chrono::milliseconds backoff{1000};  // doubled after each failed attempt
    std::function<void(std::chrono::milliseconds)> sleep;  // default: std::this_thread::sleep_for
};

// Chat-completions endpoint. Temperature 0 for repeatable expansions.
class OpenAiLlmClient : public expand::LlmClient {
public:
    OpenAiLlmClient(std::string api_key, std::string model = "gpt-3.5-turbo", HttpOptions options = {});
    std::string complete(const std::string& prompt) override;

private:
    std::string key_;
    std::string model_;
    HttpOptions options_;
};

// Programmable search engine JSON API: items[].link, spelling.correctedQuery.
class GoogleSearchClient : public crawl::SearchClient {
public:
    GoogleSearchClient(std::string api_key, std::string engine_id, HttpOptions options = {});
    crawl::SearchResponse search(const crawl::SearchRequest& request) override;

private:
    std::string key_;
    std::string cx_;
    HttpOptions options_;
};

// Translation v2 REST API, target English, plain-text format.
class GoogleTranslateClient : public nlp::TranslationClient {
public:
    explicit GoogleTranslateClient(std::string api_key, HttpOptions options = {});
    std::string translate(std::string_view lang, std::string_view token) override;

private:
    std::string key_;
    HttpOptions options_;
};

// Related queries from the public trends web endpoints (explore, then the
// related-searches widget). Responses carry an anti-JSON-hijacking prefix.
class WebTrendsClient : public expand::TrendsClient {
public:
    explicit WebTrendsClient(HttpOptions options = {}, std::string language = "en-US");
    expand::TrendsResponse related(const std::string& keyword, const std::string& window) override;

private:
    HttpOptions options_;
    std::string language_;
};

// Strips the ")]}'" guard line the trends endpoints prepend and parses the rest.
Json parse_guarded_json(std::string_view body);

}  // namespace probegen::http
