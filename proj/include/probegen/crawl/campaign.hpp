#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "probegen/crawl/search.hpp"

namespace probegen::crawl {

struct ProbeCandidate {
    std::string url;  // cleaned
    std::string origin_method;
    int origin_topic = 0;
    std::string first_query_id;
};

Json to_json(const ProbeCandidate& c);
ProbeCandidate probe_candidate_from_json(const Json& j);

// Per-query crawl record, one line per finished query in the checkpoint file.
struct QueryRecord {
    std::string query_id;
    int topic_id = 0;
    std::string method;
    std::vector<SearchResult> results;
    int client_calls = 0;
    int reductions = 0;
    bool barren = false;
};

Json to_json(const QueryRecord& r);
QueryRecord query_record_from_json(const Json& j);

struct CrawlOptions {
    SearchOptions search;
    std::size_t parallelism = 1;
};

struct CrawlStatus {
    std::size_t completed = 0;  // including queries finished by earlier runs
    std::size_t skipped = 0;    // already in the checkpoint on entry
    std::size_t remaining = 0;  // left when paused
    bool paused = false;        // provider quota exhausted
};

// Runs every query not yet in `checkpoint`, appending one record per query as
// it finishes. A QuotaExhausted from the client stops scheduling and returns
// paused; re-running resumes from the checkpoint.
CrawlStatus run_crawl(const std::vector<querygen::SearchQuery>& queries, SearchClient& client,
                      const std::filesystem::path& checkpoint, const CrawlOptions& options = {});

// Checkpoint records ordered as `queries` (records of unknown queries are ignored).
std::vector<QueryRecord> load_crawl_records(const std::vector<querygen::SearchQuery>& queries,
                                            const std::filesystem::path& checkpoint);

// Cleans every result URL and keeps the first occurrence of each cleaned
// string, with its origin. Degenerate URLs are dropped with a warning.
std::vector<ProbeCandidate> build_probe_list(const std::vector<QueryRecord>& records);

}  // namespace probegen::crawl
