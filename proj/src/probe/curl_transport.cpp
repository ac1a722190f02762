#include "probegen/probe/transport.hpp"

#include <curl/curl.h>

#include <chrono>
#include <mutex>

namespace probegen::probe {

namespace {

void curl_init_once() {
    static std::once_flag flag;
    std::call_once(flag, [] { curl_global_init(CURL_GLOBAL_DEFAULT); });
}

struct Sink {
    std::size_t received = 0;
    std::size_t cap = 0;
    bool capped = false;
};

std::size_t on_body(char*, std::size_t size, std::size_t nmemb, void* user) {
    auto* sink = static_cast<Sink*>(user);
    std::size_t n = size * nmemb;
    sink->received += n;
    if (sink->received > sink->cap) {
        sink->capped = true;
        return 0;  // abort the transfer; the status line is already known
    }
    return n;
}

}  // namespace

CurlTransport::CurlTransport(CurlTransportOptions options) : options_(std::move(options)) { curl_init_once(); }

FetchResult CurlTransport::get(const std::string& url, int, int timeout_s) {
    auto start = std::chrono::steady_clock::now();
    FetchResult r;
    CURL* h = curl_easy_init();
    if (!h) {
        r.kind = OutcomeKind::transport_error;
        r.code = CURLE_FAILED_INIT;
        return r;
    }
    Sink sink{0, options_.max_body_bytes, false};
    curl_easy_setopt(h, CURLOPT_URL, url.c_str());
    curl_easy_setopt(h, CURLOPT_HTTPGET, 1L);
    curl_easy_setopt(h, CURLOPT_FOLLOWLOCATION, 0L);
    curl_easy_setopt(h, CURLOPT_TIMEOUT, static_cast<long>(timeout_s));
    curl_easy_setopt(h, CURLOPT_NOSIGNAL, 1L);
    curl_easy_setopt(h, CURLOPT_USERAGENT, options_.user_agent.c_str());
    curl_easy_setopt(h, CURLOPT_WRITEFUNCTION, on_body);
    curl_easy_setopt(h, CURLOPT_WRITEDATA, &sink);
    if (!options_.proxy.empty()) {
        curl_easy_setopt(h, CURLOPT_PROXY, options_.proxy.c_str());
    }
    CURLcode rc = curl_easy_perform(h);
    long status = 0;
    curl_easy_getinfo(h, CURLINFO_RESPONSE_CODE, &status);
    curl_easy_cleanup(h);
    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                       .count();
    if ((rc == CURLE_OK || (rc == CURLE_WRITE_ERROR && sink.capped)) && status >= 100 && status <= 599) {
        r.kind = OutcomeKind::http_status;
        r.code = static_cast<int>(status);
    } else {
        // CURLcode values are the curl command-line exit codes.
        r.kind = OutcomeKind::transport_error;
        r.code = rc == CURLE_OK ? static_cast<int>(CURLE_UNSUPPORTED_PROTOCOL) : static_cast<int>(rc);
    }
    return r;
}

bool CurlTransport::reachable() {
    if (options_.reachability_url.empty()) {
        return true;
    }
    auto r = get(options_.reachability_url, 0, 15);
    return r.kind == OutcomeKind::http_status;
}

FetchOutcome fetch(const std::string& url, const std::string& vantage_id, Transport& transport, int run_id,
                   int timeout_s) {
    auto r = transport.get(url, run_id, timeout_s);
    return {url, vantage_id, run_id, r.kind, r.code, r.elapsed_ms, now_utc()};
}

}  // namespace probegen::probe
