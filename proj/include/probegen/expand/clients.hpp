#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace probegen::expand {

// {prompt} -> {text}. Implementations allow concurrent calls and throw
// ClientError (QuotaExhausted when the provider refuses further requests).
class LlmClient {
public:
    virtual ~LlmClient() = default;
    virtual std::string complete(const std::string& prompt) = 0;
};

struct TrendsResponse {
    std::vector<std::string> top;
    std::vector<std::string> rising;
};

// {keyword, window} -> related queries.
class TrendsClient {
public:
    virtual ~TrendsClient() = default;
    virtual TrendsResponse related(const std::string& keyword, const std::string& window) = 0;
};

// Five-year lookback in the provider's timeframe syntax.
inline constexpr std::string_view kDefaultTrendsWindow = "today 5-y";

// Request hashes used as replay keys.
std::string llm_request_key(std::string_view prompt);
std::string trends_request_key(std::string_view keyword, std::string_view window);

// Replays recorded LLM replies from a JSONL file of
// {"request_sha256" | "prompt", "response"} records. Each reply may be a
// string or a list of strings served in turn (to exercise retries); the last
// one repeats. {"prompt_contains": [...], "response"} records answer any
// prompt holding every listed substring; exact records win, then these in
// file order. Unknown requests raise ClientError.
class ReplayLlmClient : public LlmClient {
public:
    explicit ReplayLlmClient(const std::filesystem::path& jsonl);
    ReplayLlmClient() = default;

    void add(std::string_view prompt, std::vector<std::string> replies);
    std::string complete(const std::string& prompt) override;
    std::size_t calls() const { return calls_; }

private:
    struct Entry {
        std::vector<std::string> replies;
        std::size_t served = 0;
    };
    std::unordered_map<std::string, Entry> table_;
    std::vector<std::pair<std::vector<std::string>, Entry>> rules_;
    std::size_t calls_ = 0;
    std::mutex mutex_;
};

// Replays recorded related queries from a JSONL file of
// {"keyword", "window", "top", "rising"} records, or {"keyword", "window",
// "error": "quota" | "failure"} to simulate provider failures.
class ReplayTrendsClient : public TrendsClient {
public:
    explicit ReplayTrendsClient(const std::filesystem::path& jsonl);
    ReplayTrendsClient() = default;

    void add(std::string_view keyword, std::string_view window, TrendsResponse response);
    void add_failure(std::string_view keyword, std::string_view window, bool quota);
    TrendsResponse related(const std::string& keyword, const std::string& window) override;

private:
    struct Entry {
        TrendsResponse response;
        std::string error;
    };
    std::unordered_map<std::string, Entry> table_;
};

}  // namespace probegen::expand
