#include "probegen/crawl/campaign.hpp"

#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "probegen/common/error.hpp"
#include "probegen/common/log.hpp"
#include "probegen/common/parallel.hpp"
#include "probegen/crawl/url_clean.hpp"

namespace probegen::crawl {

Json to_json(const ProbeCandidate& c) {
    Json j;
    j["url"] = c.url;
    j["origin_method"] = c.origin_method;
    j["origin_topic"] = c.origin_topic;
    j["first_query_id"] = c.first_query_id;
    return j;
}

ProbeCandidate probe_candidate_from_json(const Json& j) {
    return {j.at("url").get<std::string>(), j.at("origin_method").get<std::string>(),
            j.at("origin_topic").get<int>(), j.value("first_query_id", std::string())};
}

Json to_json(const QueryRecord& r) {
    Json j;
    j["query_id"] = r.query_id;
    j["topic_id"] = r.topic_id;
    j["method"] = r.method;
    j["client_calls"] = r.client_calls;
    j["reductions"] = r.reductions;
    j["barren"] = r.barren;
    Json results = Json::array();
    for (const auto& res : r.results) {
        results.push_back(to_json(res));
    }
    j["results"] = std::move(results);
    return j;
}

QueryRecord query_record_from_json(const Json& j) {
    QueryRecord r;
    r.query_id = j.at("query_id").get<std::string>();
    r.topic_id = j.at("topic_id").get<int>();
    r.method = j.at("method").get<std::string>();
    r.client_calls = j.at("client_calls").get<int>();
    r.reductions = j.at("reductions").get<int>();
    r.barren = j.at("barren").get<bool>();
    for (const auto& res : j.at("results")) {
        r.results.push_back(search_result_from_json(res));
    }
    return r;
}

namespace {

std::unordered_map<std::string, QueryRecord> read_checkpoint(const std::filesystem::path& checkpoint) {
    std::unordered_map<std::string, QueryRecord> done;
    if (!std::filesystem::exists(checkpoint)) {
        return done;
    }
    const std::string file = checkpoint.string();
    for_each_jsonl(checkpoint, [&](const Json& rec, std::size_t line) {
        try {
            auto r = query_record_from_json(rec);
            done[r.query_id] = std::move(r);
        } catch (const Json::exception& e) {
            throw SchemaError(file, line, e.what());
        }
    });
    return done;
}

}  // namespace

CrawlStatus run_crawl(const std::vector<querygen::SearchQuery>& queries, SearchClient& client,
                      const std::filesystem::path& checkpoint, const CrawlOptions& options) {
    auto done = read_checkpoint(checkpoint);
    CrawlStatus status;
    std::vector<const querygen::SearchQuery*> todo;
    for (const auto& q : queries) {
        if (done.contains(q.query_id)) {
            ++status.skipped;
        } else {
            todo.push_back(&q);
        }
    }
    status.completed = status.skipped;

    JsonlAppender out(checkpoint);
    std::mutex out_mutex;
    try {
        parallel_for(todo.size(), options.parallelism, [&](std::size_t i) {
            const auto& q = *todo[i];
            auto outcome = search(q, client, 0, options.search);
            QueryRecord rec{q.query_id, q.topic_id, std::string(querygen::to_string(q.method)),
                            std::move(outcome.results), outcome.client_calls, outcome.reductions, outcome.barren};
            if (rec.barren) {
                log().debug("query {} barren after {} reductions", q.query_id, rec.reductions);
            }
            std::lock_guard lock(out_mutex);
            out.append(to_json(rec));
            ++status.completed;
        });
    } catch (const QuotaExhausted& e) {
        status.paused = true;
        status.remaining = queries.size() - status.completed;
        log().warn("search quota exhausted after {} of {} queries; crawl paused, re-run to resume",
                   status.completed, queries.size());
    }
    return status;
}

std::vector<QueryRecord> load_crawl_records(const std::vector<querygen::SearchQuery>& queries,
                                            const std::filesystem::path& checkpoint) {
    auto done = read_checkpoint(checkpoint);
    std::vector<QueryRecord> out;
    for (const auto& q : queries) {
        if (auto it = done.find(q.query_id); it != done.end()) {
            out.push_back(std::move(it->second));
        }
    }
    return out;
}

std::vector<ProbeCandidate> build_probe_list(const std::vector<QueryRecord>& records) {
    std::vector<ProbeCandidate> out;
    std::unordered_set<std::string> seen;
    for (const auto& rec : records) {
        for (const auto& res : rec.results) {
            std::string url;
            try {
                url = clean_url(res.url);
            } catch (const DegenerateUrl& e) {
                log().warn("query {}: {}", rec.query_id, e.what());
                continue;
            }
            if (seen.insert(url).second) {
                out.push_back({std::move(url), rec.method, rec.topic_id, rec.query_id});
            }
        }
    }
    return out;
}

}  // namespace probegen::crawl
