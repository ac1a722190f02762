#include "probegen/crawl/search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace probegen::crawl {

std::string SearchRequest::text() const {
    std::string out;
    for (const auto& k : keywords) {
        if (!out.empty()) {
            out.push_back(' ');
        }
        out += k;
    }
    return out;
}

Json to_json(const SearchResult& r) {
    Json j;
    j["query_id"] = r.query_id;
    j["rank"] = r.rank;
    j["url"] = r.url;
    j["spell_corrected"] = r.spell_corrected;
    return j;
}

SearchResult search_result_from_json(const Json& j) {
    return {j.at("query_id").get<std::string>(), j.at("rank").get<int>(), j.at("url").get<std::string>(),
            j.at("spell_corrected").get<bool>()};
}

std::vector<querygen::QueryKeyword> reduce_keywords(const std::vector<querygen::QueryKeyword>& keywords) {
    std::size_t n = keywords.size();
    std::size_t drop = (n + 4) / 5;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = keywords[a];
        const auto& y = keywords[b];
        if (x.tier != y.tier) {
            return x.tier > y.tier;
        }
        if (x.rank != y.rank) {
            return x.rank > y.rank;
        }
        return a > b;
    });
    std::vector<bool> dropped(n, false);
    for (std::size_t i = 0; i < drop && i < n; ++i) {
        dropped[order[i]] = true;
    }
    std::vector<querygen::QueryKeyword> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!dropped[i]) {
            out.push_back(keywords[i]);
        }
    }
    return out;
}

namespace {

void append_page(SearchOutcome& out, const std::string& query_id, const SearchResponse& resp, int max_results,
                 bool corrected) {
    int rank = 0;
    for (const auto& url : resp.urls) {
        if (rank == max_results) {
            break;
        }
        out.results.push_back({query_id, ++rank, url, corrected});
    }
}

}  // namespace

SearchOutcome search(const querygen::SearchQuery& query, SearchClient& client, int depth,
                     const SearchOptions& options) {
    if (depth != 0 && depth != 1) {
        throw std::invalid_argument("search depth must be 0 or 1");
    }
    SearchOutcome out;
    auto keywords = query.keywords;
    bool may_recurse = depth == 0;
    for (;;) {
        SearchRequest req;
        for (const auto& k : keywords) {
            req.keywords.push_back(k.term);
        }
        out.final_keywords = req.keywords;
        auto resp = client.search(req);
        ++out.client_calls;
        append_page(out, query.query_id, resp, req.max_results, depth == 1);

        if (resp.corrected_query && !resp.corrected_query->empty() && may_recurse) {
            may_recurse = false;
            out.corrected = true;
            querygen::SearchQuery corrected;
            corrected.query_id = query.query_id;
            corrected.topic_id = query.topic_id;
            corrected.method = query.method;
            corrected.keywords.push_back({*resp.corrected_query, 1, 0});
            auto sub = search(corrected, client, 1, options);
            out.client_calls += sub.client_calls;
            std::move(sub.results.begin(), sub.results.end(), std::back_inserter(out.results));
            break;
        }
        if (!out.results.empty() || resp.corrected_query) {
            break;
        }
        if (depth == 1 || out.reductions >= options.max_retries) {
            break;
        }
        auto reduced = reduce_keywords(keywords);
        if (static_cast<int>(reduced.size()) < options.min_keywords) {
            break;
        }
        keywords = std::move(reduced);
        ++out.reductions;
    }
    out.barren = out.results.empty();
    return out;
}

}  // namespace probegen::crawl
