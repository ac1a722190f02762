#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "probegen/crawl/search.hpp"

namespace probegen::crawl {

// Recorded replies keyed by the sha256 of the query text. JSONL records:
// {"query" | "request_sha256", "urls": [...], "corrected_query"?: str,
//  "error"?: "quota"}. Unrecorded queries go to `fallback` when given and
// otherwise get an empty reply.
class ReplaySearchClient : public SearchClient {
public:
    explicit ReplaySearchClient(const std::filesystem::path& jsonl, SearchClient* fallback = nullptr);
    explicit ReplaySearchClient(SearchClient* fallback = nullptr) : fallback_(fallback) {}

    void add(const std::string& query_text, SearchResponse response);
    void add_quota_error(const std::string& query_text);
    SearchResponse search(const SearchRequest& request) override;

    std::size_t calls() const;
    std::vector<std::string> requests() const;  // query texts in call order

private:
    struct Entry {
        SearchResponse response;
        bool quota = false;
    };
    std::unordered_map<std::string, Entry> table_;
    SearchClient* fallback_ = nullptr;
    mutable std::mutex mutex_;
    std::vector<std::string> log_;
};

// Keyword search over a small page corpus (JSONL {url, text}). A page
// matches when it contains every query word, or its Porter stem; pages rank by total matched
// word frequency, then URL. When nothing matches and some query word is
// unknown but one edit away from an indexed word, the reply carries the
// corrected query text.
class LocalIndexSearchClient : public SearchClient {
public:
    explicit LocalIndexSearchClient(const std::filesystem::path& jsonl);
    LocalIndexSearchClient() = default;

    void add_page(const std::string& url, const std::string& text);
    SearchResponse search(const SearchRequest& request) override;

private:
    std::vector<std::string> urls_;
    std::vector<std::map<std::string, int>> docs_;
    std::set<std::string> vocab_;
};

}  // namespace probegen::crawl
