#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/common/rate_limiter.hpp"
#include "probegen/querygen/sampler.hpp"

namespace probegen::crawl {

inline constexpr int kMaxResults = 10;

struct SearchRequest {
    std::vector<std::string> keywords;  // joined with spaces into the query text
    int max_results = kMaxResults;

    std::string text() const;
};

struct SearchResponse {
    std::vector<std::string> urls;  // best first, at most max_results
    std::optional<std::string> corrected_query;
};

// Implementations allow concurrent calls; QuotaExhausted pauses a campaign.
class SearchClient {
public:
    virtual ~SearchClient() = default;
    virtual SearchResponse search(const SearchRequest& request) = 0;
};

// Takes a token from a shared limiter before each call.
class RateLimitedSearchClient : public SearchClient {
public:
    RateLimitedSearchClient(SearchClient& inner, RateLimiter& limiter) : inner_(inner), limiter_(limiter) {}
    SearchResponse search(const SearchRequest& request) override {
        limiter_.acquire();
        return inner_.search(request);
    }

private:
    SearchClient& inner_;
    RateLimiter& limiter_;
};

struct SearchResult {
    std::string query_id;
    int rank = 1;  // 1..10 within the page that produced it
    std::string url;
    bool spell_corrected = false;
};

Json to_json(const SearchResult& r);
SearchResult search_result_from_json(const Json& j);

struct SearchOptions {
    int max_retries = 5;   // reduction retries after the first call
    int min_keywords = 2;  // never search with fewer
};

struct SearchOutcome {
    std::vector<SearchResult> results;
    int client_calls = 0;
    int reductions = 0;
    bool corrected = false;  // the one spell-correction recursion was issued
    bool barren = false;     // no results at all
    std::vector<std::string> final_keywords;
};

// Keywords kept after one reduction step: ceil(20%) are dropped, highest
// tier number first, then worst rank. Search order is otherwise preserved.
std::vector<querygen::QueryKeyword> reduce_keywords(const std::vector<querygen::QueryKeyword>& keywords);

// Issues the query. A spell-corrected query in a reply at depth 0 triggers
// exactly one call with the corrected text at depth 1, whose results are
// appended and flagged. A reply with no results and no correction shrinks the
// keyword set and retries, until results appear, the set would drop below
// `min_keywords`, or `max_retries` is reached. At most 2 + max_retries calls.
SearchOutcome search(const querygen::SearchQuery& query, SearchClient& client, int depth = 0,
                     const SearchOptions& options = {});

}  // namespace probegen::crawl
