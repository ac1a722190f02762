#pragma once

#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "probegen/ingest/sanitize.hpp"
#include "probegen/ingest/source_list.hpp"

namespace probegen::ingest {

struct FetchedPage {
    PageSnapshot snapshot;
    RedirectChain redirects;
};

// Anything that can turn a URL into a snapshot with extracted text.
class PageSource {
public:
    virtual ~PageSource() = default;
    // Must be safe to call from several threads at once.
    virtual FetchedPage fetch(const std::string& url) = 0;
};

// Recorded pages. `dir/index.jsonl` holds one record per URL:
//   {url, final_url?, status | transport_error{tag, code}, redirects?[], redirect_loop?,
//    content_type?, body_file?, fetched_at?}
// body_file is raw HTML relative to `dir`; it goes through extract_main_text.
class FixturePageStore : public PageSource {
public:
    explicit FixturePageStore(const std::filesystem::path& dir);
    FetchedPage fetch(const std::string& url) override;
    std::size_t size() const { return records_.size(); }

private:
    struct Record;
    std::filesystem::path dir_;
    std::unordered_map<std::string, std::shared_ptr<const Record>> records_;
};

struct CurlFetchOptions {
    int timeout_s = 30;
    int max_redirects = 20;
    std::size_t max_body_bytes = 4 << 20;
    std::string user_agent = "probegen/1.0 (+censorship measurement research)";
};

// Live fetcher. Redirects are followed by hand so the full chain can be
// judged; a repeated target ends the chain with loop=true.
class CurlPageFetcher : public PageSource {
public:
    explicit CurlPageFetcher(CurlFetchOptions options = {});
    FetchedPage fetch(const std::string& url) override;

private:
    CurlFetchOptions options_;
};

// Fetches every entry with up to `parallelism` concurrent requests. Output
// order matches the input order.
std::vector<FetchedPage> fetch_all(std::span<const SourceEntry> entries, PageSource& source,
                                   std::size_t parallelism);

}  // namespace probegen::ingest
