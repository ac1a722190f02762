#include "probegen/http/clients.hpp"

#include <httplib.h>

#include <cstdlib>
#include <optional>
#include <thread>

#include "probegen/common/error.hpp"
#include "probegen/common/log.hpp"

namespace probegen::http {

namespace {

struct Reply {
    int status = 0;
    std::string body;
    httplib::Headers headers;
};

// One endpoint with retries. Messages pass through redact() so a key placed
// in a query string never reaches an exception or the log.
class Endpoint {
public:
    Endpoint(const HttpOptions& options, std::string default_base, std::string secret)
        : options_(options),
          base_(options.base_url.empty() ? std::move(default_base) : options.base_url),
          secret_(std::move(secret)) {}

    Reply get(const std::string& path, const httplib::Params& params, const httplib::Headers& headers = {}) {
        return send([&](httplib::Client& c) { return c.Get(path, params, headers); });
    }

    Reply post_json(const std::string& path, const Json& body, const httplib::Headers& headers = {}) {
        auto text = body.dump();
        return send([&](httplib::Client& c) { return c.Post(path, headers, text, "application/json"); });
    }

    [[noreturn]] void fail(const std::string& what, const Reply& r) const {
        auto msg = what + ": HTTP " + std::to_string(r.status) + " " + r.body.substr(0, 300);
        throw ClientError(clean(msg));
    }

    std::string clean(std::string s) const { return secret_.empty() ? s : redact(std::move(s), secret_); }

private:
    template <typename Call>
    Reply send(Call call) {
        auto delay = options_.backoff;
        for (int attempt = 1;; ++attempt) {
            httplib::Client client(base_);
            client.set_connection_timeout(options_.timeout_s, 0);
            client.set_read_timeout(options_.timeout_s, 0);
            client.set_write_timeout(options_.timeout_s, 0);
            auto res = call(client);
            std::string problem;
            if (!res) {
                problem = "transport error: " + httplib::to_string(res.error());
            } else if (res->status >= 500 || (res->status == 429 && !quota_body(res->body))) {
                problem = "HTTP " + std::to_string(res->status);
            } else {
                return Reply{res->status, res->body, res->headers};
            }
            if (attempt >= options_.max_attempts) {
                if (res && res->status == 429) {
                    throw QuotaExhausted(clean(base_ + ": rate limited after " + std::to_string(attempt) + " attempts"));
                }
                throw ClientError(clean(base_ + ": " + problem));
            }
            log().warn("{} (attempt {}/{}), retrying", clean(base_ + ": " + problem), attempt, options_.max_attempts);
            if (options_.sleep) {
                options_.sleep(delay);
            } else {
                std::this_thread::sleep_for(delay);
            }
            delay *= 2;
        }
    }

    static bool quota_body(const std::string& body) {
        return body.find("insufficient_quota") != std::string::npos ||
               body.find("dailyLimitExceeded") != std::string::npos ||
               body.find("quotaExceeded") != std::string::npos;
    }

    const HttpOptions& options_;
    std::string base_;
    std::string secret_;
};

Json parse_body(const Endpoint& ep, const Reply& r, const std::string& what) {
    try {
        return Json::parse(r.body);
    } catch (const Json::parse_error&) {
        ep.fail(what + ": unparseable reply", r);
    }
}

// Google APIs report quota exhaustion as 403 or 429 with a reason string.
void check_google(const Endpoint& ep, const Reply& r, const std::string& what) {
    if (r.status == 200) {
        return;
    }
    if (r.status == 429 || (r.status == 403 && (r.body.find("dailyLimitExceeded") != std::string::npos ||
                                                 r.body.find("rateLimitExceeded") != std::string::npos ||
                                                 r.body.find("quotaExceeded") != std::string::npos))) {
        throw QuotaExhausted(what + ": quota exhausted (HTTP " + std::to_string(r.status) + ")");
    }
    ep.fail(what, r);
}

}  // namespace

std::string env_secret(const std::string& var) {
    const char* v = std::getenv(var.c_str());
    if (!v || !*v) {
        throw ConfigError("credential variable " + var + " is not set");
    }
    return v;
}

OpenAiLlmClient::OpenAiLlmClient(std::string api_key, std::string model, HttpOptions options)
    : key_(std::move(api_key)), model_(std::move(model)), options_(std::move(options)) {}

std::string OpenAiLlmClient::complete(const std::string& prompt) {
    Endpoint ep(options_, "https://api.openai.com", key_);
    Json body{{"model", model_},
              {"temperature", 0},
              {"messages", Json::array({Json{{"role", "user"}, {"content", prompt}}})}};
    auto r = ep.post_json("/v1/chat/completions", body, {{"Authorization", "Bearer " + key_}});
    if (r.status == 429) {
        throw QuotaExhausted("LLM provider: quota exhausted");
    }
    if (r.status != 200) {
        ep.fail("LLM provider", r);
    }
    auto j = parse_body(ep, r, "LLM provider");
    try {
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const Json::exception&) {
        ep.fail("LLM provider: reply has no message content", r);
    }
}

GoogleSearchClient::GoogleSearchClient(std::string api_key, std::string engine_id, HttpOptions options)
    : key_(std::move(api_key)), cx_(std::move(engine_id)), options_(std::move(options)) {}

crawl::SearchResponse GoogleSearchClient::search(const crawl::SearchRequest& request) {
    Endpoint ep(options_, "https://www.googleapis.com", key_);
    httplib::Params params{{"key", key_},
                           {"cx", cx_},
                           {"q", request.text()},
                           {"num", std::to_string(std::min(request.max_results, crawl::kMaxResults))}};
    auto r = ep.get("/customsearch/v1", params);
    check_google(ep, r, "search provider");
    auto j = parse_body(ep, r, "search provider");
    crawl::SearchResponse out;
    if (auto it = j.find("items"); it != j.end()) {
        for (const auto& item : *it) {
            if (item.contains("link") && item["link"].is_string()) {
                out.urls.push_back(item["link"].get<std::string>());
            }
        }
    }
    if (auto it = j.find("spelling"); it != j.end() && it->contains("correctedQuery")) {
        out.corrected_query = (*it)["correctedQuery"].get<std::string>();
    }
    if (static_cast<int>(out.urls.size()) > request.max_results) {
        out.urls.resize(static_cast<std::size_t>(request.max_results));
    }
    return out;
}

GoogleTranslateClient::GoogleTranslateClient(std::string api_key, HttpOptions options)
    : key_(std::move(api_key)), options_(std::move(options)) {}

std::string GoogleTranslateClient::translate(std::string_view lang, std::string_view token) {
    Endpoint ep(options_, "https://translation.googleapis.com", key_);
    Json body{{"q", std::string(token)}, {"source", std::string(lang)}, {"target", "en"}, {"format", "text"}};
    auto r = ep.post_json("/language/translate/v2?key=" + key_, body);
    check_google(ep, r, "translation provider");
    auto j = parse_body(ep, r, "translation provider");
    try {
        auto t = j.at("data").at("translations").at(0).at("translatedText").get<std::string>();
        if (t.empty()) {
            throw ClientError("translation provider returned an empty translation");
        }
        return t;
    } catch (const Json::exception&) {
        ep.fail("translation provider: reply has no translation", r);
    }
}

Json parse_guarded_json(std::string_view body) {
    auto brace = body.find_first_of("{[");
    if (brace == std::string_view::npos) {
        throw ClientError("trends endpoint: reply holds no JSON");
    }
    try {
        return Json::parse(body.substr(brace));
    } catch (const Json::parse_error& e) {
        throw ClientError(std::string("trends endpoint: unparseable reply: ") + e.what());
    }
}

WebTrendsClient::WebTrendsClient(HttpOptions options, std::string language)
    : options_(std::move(options)), language_(std::move(language)) {}

expand::TrendsResponse WebTrendsClient::related(const std::string& keyword, const std::string& window) {
    Endpoint ep(options_, "https://trends.google.com", "");
    auto check = [&](const Reply& r, const char* what) {
        if (r.status == 429) {
            throw QuotaExhausted(std::string("trends endpoint: rate limited at ") + what);
        }
        if (r.status != 200) {
            ep.fail(std::string("trends endpoint ") + what, r);
        }
    };

    // The endpoints want the session cookie the landing page sets.
    httplib::Headers headers;
    auto landing = ep.get("/trends/explore", {{"geo", ""}});
    for (auto [it, end] = landing.headers.equal_range("Set-Cookie"); it != end; ++it) {
        auto cookie = it->second.substr(0, it->second.find(';'));
        auto existing = headers.find("Cookie");
        if (existing == headers.end()) {
            headers.emplace("Cookie", cookie);
        } else {
            existing->second += "; " + cookie;
        }
    }

    Json req{{"comparisonItem", Json::array({Json{{"keyword", keyword}, {"geo", ""}, {"time", window}}})},
             {"category", 0},
             {"property", ""}};
    auto explore = ep.get("/trends/api/explore", {{"hl", language_}, {"tz", "0"}, {"req", req.dump()}}, headers);
    check(explore, "explore");
    auto widgets = parse_guarded_json(explore.body);
    std::optional<Json> widget;
    if (auto list = widgets.find("widgets"); list != widgets.end() && list->is_array()) {
        for (const auto& w : *list) {
            if (w.is_object() && w.value("id", "") == "RELATED_QUERIES") {
                widget = w;
                break;
            }
        }
    }
    if (!widget || !widget->contains("token") || !widget->contains("request")) {
        throw ClientError("trends endpoint: no related-queries widget for '" + keyword + "'");
    }
    auto data = ep.get("/trends/api/widgetdata/relatedsearches",
                       {{"hl", language_},
                        {"tz", "0"},
                        {"req", (*widget)["request"].dump()},
                        {"token", (*widget)["token"].get<std::string>()}},
                       headers);
    check(data, "related searches");
    auto j = parse_guarded_json(data.body);
    expand::TrendsResponse out;
    try {
        const auto& lists = j.at("default").at("rankedList");
        auto collect = [&](std::size_t i, std::vector<std::string>& into) {
            if (i >= lists.size()) {
                return;
            }
            for (const auto& k : lists[i].value("rankedKeyword", Json::array())) {
                into.push_back(k.at("query").get<std::string>());
            }
        };
        collect(0, out.top);
        collect(1, out.rising);
    } catch (const Json::exception& e) {
        throw ClientError(std::string("trends endpoint: unexpected related-searches layout: ") + e.what());
    }
    return out;
}

}  // namespace probegen::http
