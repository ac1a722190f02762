#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/common/time.hpp"

namespace probegen::simnet {

// What the origin server does for a URL when nothing interferes.
struct OriginResponse {
    bool dead = false;  // name does not resolve anywhere
    int status = 200;
    long long delay_ms = 0;
};

struct SimUrl {
    std::string url;
    std::string host;
    std::string domain;  // owning scenario domain
    std::string ip;
    OriginResponse origin;
};

struct SimDomain {
    std::string name;
    std::string ip;
    OriginResponse origin;
    std::vector<std::string> urls;
};

enum class MatcherKind { exact, pld, ip };

enum class Mechanism {
    dns_nxdomain,
    dns_forged_ip,
    tcp_rst,
    timeout,
    throttle,
    http_block_page,
    server_side_403_bots,
};

std::string_view to_string(MatcherKind k);
std::string_view to_string(Mechanism m);

struct BlockPolicy {
    MatcherKind matcher = MatcherKind::exact;
    std::string value;  // host, domain, or IP address
    Mechanism mechanism = Mechanism::dns_nxdomain;
    long long param = 0;  // throttle: added delay in ms; http_block_page: status
    std::optional<double> probability;  // unset: always

    // exact: host equals value. pld: host is value or a subdomain of it.
    // ip: the host's address equals value.
    bool matches(const SimUrl& u) const;
    bool always() const { return !probability; }
};

struct SimVantage {
    std::string id;
    std::vector<BlockPolicy> policies;  // first match wins
    long long base_latency_ms = 50;
    double flakiness = 0;  // chance of a spurious transient failure per fetch
    std::uint64_t seed = 0;
};

struct Scenario {
    std::uint64_t seed = 0;
    std::string tool_user_agent = "probegen/1.0 (+censorship measurement research)";
    int n_runs = 50;
    std::chrono::hours run_interval{72};
    Timestamp start{};
    std::vector<SimDomain> domains;
    std::vector<SimVantage> vantages;
    std::vector<std::string> baseline_vantages;

    const SimUrl* find_url(const std::string& url) const;
    const SimVantage& vantage(const std::string& id) const;  // throws ConfigError
    std::vector<std::string> urls() const;                   // scenario order

    // Rebuilds the URL index; call after editing `domains` by hand.
    void index();

private:
    std::map<std::string, SimUrl> url_index_;
};

// Scenario file layout:
// {
//   "seed": 1, "tool_user_agent": "...", "n_runs": 50, "run_interval_hours": 72,
//   "start": "2024-01-01T00:00:00Z",
//   "domains": [{"name": "a.example", "ip": "192.0.2.1",
//                "origin": {"status": 200, "delay_ms": 80} | {"dead": true},
//                "urls": ["https://a.example/", {"url": "...", "status": 404}]}],
//   "vantages": [{"id": "censored", "base_latency_ms": 40, "flakiness": 0.02, "seed": 7,
//                 "policies": [{"match": {"pld": "a.example"}, "mechanism": "dns_nxdomain"},
//                              {"match": {"ip": "192.0.2.9"}, "mechanism": "throttle",
//                               "delay_ms": 45000, "probability": 0.5},
//                              {"match": {"exact": "b.example"}, "mechanism": "http_block_page",
//                               "status": 451}]}],
//   "baseline_vantages": ["free1", ...]
// }
// A domain with no "urls" gets https://<name>/. Throws ConfigError.
Scenario scenario_from_json(const Json& j);
Scenario load_scenario(const std::filesystem::path& path);
Json to_json(const Scenario& s);

// Domains that bear an always-on dns/tcp/block-page policy at a non-baseline
// vantage and are reachable from the baseline vantages.
std::vector<std::string> blocked_domains(const Scenario& s);

}  // namespace probegen::simnet
