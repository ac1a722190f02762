#pragma once

#include <string>

#include "probegen/probe/outcome.hpp"

namespace probegen::probe {

struct FetchResult {
    OutcomeKind kind = OutcomeKind::http_status;
    int code = 0;
    long long elapsed_ms = 0;
};

// How a vantage reaches the network: real sockets, a proxy, or the simulator.
// get() must be safe to call concurrently and never throws for network
// failures; they come back as transport errors.
class Transport {
public:
    virtual ~Transport() = default;
    virtual FetchResult get(const std::string& url, int run_id, int timeout_s) = 0;
    // False when the vantage itself is down; campaigns pause instead of
    // recording a run of spurious failures.
    virtual bool reachable() { return true; }
};

struct CurlTransportOptions {
    std::string user_agent = "probegen/1.0 (+censorship measurement research)";
    std::string proxy;                     // empty: direct
    std::size_t max_body_bytes = 64 << 10;
    std::string reachability_url;          // probed by reachable(); empty: always reachable
};

// One GET of the URL, redirects not followed, body capped. Failures map to
// the transfer tool's exit-code numbering.
class CurlTransport : public Transport {
public:
    explicit CurlTransport(CurlTransportOptions options = {});
    FetchResult get(const std::string& url, int run_id, int timeout_s) override;
    bool reachable() override;

private:
    CurlTransportOptions options_;
};

// Single fetch: `transport` result stamped with identity and time.
FetchOutcome fetch(const std::string& url, const std::string& vantage_id, Transport& transport, int run_id,
                   int timeout_s = 30);

}  // namespace probegen::probe
