#include "probegen/ingest/page_source.hpp"

#include <mutex>
#include <unordered_set>

#include <curl/curl.h>

#include "probegen/common/exit_codes.hpp"
#include "probegen/common/jsonl.hpp"
#include "probegen/common/log.hpp"
#include "probegen/common/parallel.hpp"
#include "probegen/common/url.hpp"
#include "probegen/ingest/errors.hpp"
#include "probegen/ingest/html_extract.hpp"

namespace probegen::ingest {

struct FixturePageStore::Record {
    std::string final_url;
    PageStatus status;
    RedirectChain redirects;
    std::string content_type;
    std::string body_file;
    Timestamp fetched_at{};
};

FixturePageStore::FixturePageStore(const std::filesystem::path& dir) : dir_(dir) {
    auto index = dir / "index.jsonl";
    if (!std::filesystem::exists(index)) {
        throw IngestError("page store index not found: " + index.string());
    }
    const std::string file = index.string();
    for_each_jsonl(index, [&](const Json& j, std::size_t line) {
        FieldReader r{j, file, line};
        auto rec = std::make_shared<Record>();
        auto url = r.string("url");
        rec->final_url = j.contains("final_url") ? r.string("final_url") : url;
        if (j.contains("status")) {
            rec->status = HttpCode{static_cast<int>(r.integer("status"))};
        } else if (j.contains("transport_error")) {
            const auto& t = j["transport_error"];
            if (!t.is_object() || !t.contains("tag")) {
                r.fail("transport_error must be an object with a tag");
            }
            std::string tag = t["tag"].get<std::string>();
            int code = t.contains("code") ? t["code"].get<int>() : exit_code_for_tag(tag);
            rec->status = TransportFailure{tag, code};
        } else {
            r.fail("record needs status or transport_error");
        }
        if (j.contains("redirects")) {
            if (!j["redirects"].is_array()) {
                r.fail("redirects must be an array");
            }
            for (const auto& hop : j["redirects"]) {
                rec->redirects.hops.push_back(hop.get<std::string>());
            }
        }
        rec->redirects.loop = j.value("redirect_loop", false);
        rec->content_type = j.value("content_type", "");
        rec->body_file = j.value("body_file", "");
        if (j.contains("fetched_at")) {
            rec->fetched_at = parse_utc(r.string("fetched_at"));
        }
        records_[url] = std::move(rec);
    });
}

FetchedPage FixturePageStore::fetch(const std::string& url) {
    FetchedPage page;
    page.snapshot.url = url;
    page.snapshot.final_url = url;
    auto it = records_.find(url);
    if (it == records_.end()) {
        log().warn("no recorded page for {}", url);
        page.snapshot.status = TransportFailure{"dns", exit_code::dns};
        return page;
    }
    const Record& rec = *it->second;
    page.snapshot.final_url = rec.final_url;
    page.snapshot.status = rec.status;
    page.snapshot.fetched_at = rec.fetched_at;
    page.redirects = rec.redirects;
    if (!rec.body_file.empty()) {
        page.snapshot.set_body(extract_main_text(read_file(dir_ / rec.body_file), rec.content_type));
    }
    return page;
}

namespace {

void curl_init_once() {
    static std::once_flag once;
    std::call_once(once, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

struct Transfer {
    std::string body;
    std::size_t cap = 0;
    std::string location;  // raw Location header, kept when curl cannot resolve it
};

std::size_t on_body(char* data, std::size_t size, std::size_t n, void* user) {
    auto* t = static_cast<Transfer*>(user);
    std::size_t bytes = size * n;
    std::size_t room = t->cap > t->body.size() ? t->cap - t->body.size() : 0;
    t->body.append(data, std::min(bytes, room));
    // Returning a short count aborts the transfer once the cap is reached.
    return room == 0 ? 0 : bytes;
}

std::size_t on_header(char* data, std::size_t size, std::size_t n, void* user) {
    auto* t = static_cast<Transfer*>(user);
    std::string_view line(data, size * n);
    if (line.size() > 9 && (line.substr(0, 9) == "Location:" || line.substr(0, 9) == "location:")) {
        auto v = line.substr(9);
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) {
            v.remove_prefix(1);
        }
        while (!v.empty() && (v.back() == '\r' || v.back() == '\n' || v.back() == ' ')) {
            v.remove_suffix(1);
        }
        t->location = std::string(v);
    }
    return size * n;
}

}  // namespace

CurlPageFetcher::CurlPageFetcher(CurlFetchOptions options) : options_(std::move(options)) {
    curl_init_once();
}

FetchedPage CurlPageFetcher::fetch(const std::string& url) {
    FetchedPage page;
    page.snapshot.url = url;
    page.snapshot.fetched_at = now_utc();
    std::unordered_set<std::string> seen{url};
    std::string current = url;

    std::unique_ptr<CURL, decltype(&curl_easy_cleanup)> h(curl_easy_init(), &curl_easy_cleanup);
    if (!h) {
        throw IngestError("curl_easy_init failed");
    }
    for (;;) {
        Transfer t;
        t.cap = options_.max_body_bytes;
        curl_easy_reset(h.get());
        curl_easy_setopt(h.get(), CURLOPT_URL, current.c_str());
        curl_easy_setopt(h.get(), CURLOPT_FOLLOWLOCATION, 0L);
        curl_easy_setopt(h.get(), CURLOPT_TIMEOUT, static_cast<long>(options_.timeout_s));
        curl_easy_setopt(h.get(), CURLOPT_USERAGENT, options_.user_agent.c_str());
        curl_easy_setopt(h.get(), CURLOPT_NOSIGNAL, 1L);
        curl_easy_setopt(h.get(), CURLOPT_ACCEPT_ENCODING, "");
        curl_easy_setopt(h.get(), CURLOPT_WRITEFUNCTION, &on_body);
        curl_easy_setopt(h.get(), CURLOPT_WRITEDATA, &t);
        curl_easy_setopt(h.get(), CURLOPT_HEADERFUNCTION, &on_header);
        curl_easy_setopt(h.get(), CURLOPT_HEADERDATA, &t);
        CURLcode rc = curl_easy_perform(h.get());
        page.snapshot.final_url = current;
        if (rc != CURLE_OK && !(rc == CURLE_WRITE_ERROR && t.body.size() >= t.cap)) {
            int code = static_cast<int>(rc);
            page.snapshot.status = TransportFailure{std::string(transport_tag(code)), code};
            return page;
        }
        long status = 0;
        curl_easy_getinfo(h.get(), CURLINFO_RESPONSE_CODE, &status);
        page.snapshot.status = HttpCode{static_cast<int>(status)};
        if (status >= 300 && status < 400 && !t.location.empty()) {
            char* resolved = nullptr;
            curl_easy_getinfo(h.get(), CURLINFO_REDIRECT_URL, &resolved);
            std::string next = resolved ? std::string(resolved) : t.location;
            page.redirects.hops.push_back(next);
            if (!parse_url(next)) {
                return page;
            }
            if (!seen.insert(next).second) {
                page.redirects.loop = true;
                return page;
            }
            if (static_cast<int>(page.redirects.hops.size()) > options_.max_redirects) {
                return page;
            }
            current = next;
            continue;
        }
        char* ctype = nullptr;
        curl_easy_getinfo(h.get(), CURLINFO_CONTENT_TYPE, &ctype);
        page.snapshot.set_body(extract_main_text(t.body, ctype ? ctype : ""));
        return page;
    }
}

std::vector<FetchedPage> fetch_all(std::span<const SourceEntry> entries, PageSource& source,
                                   std::size_t parallelism) {
    std::vector<FetchedPage> pages(entries.size());
    parallel_for(entries.size(), parallelism, [&](std::size_t i) { pages[i] = source.fetch(entries[i].url); });
    return pages;
}

}  // namespace probegen::ingest
