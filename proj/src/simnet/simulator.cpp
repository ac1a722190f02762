#include "probegen/simnet/simulator.hpp"

#include "probegen/common/rng.hpp"

namespace probegen::simnet {

using probe::FetchResult;
using probe::OutcomeKind;

namespace {

FetchResult transport_error(int code, long long elapsed_ms) { return {OutcomeKind::transport_error, code, elapsed_ms}; }

double draw(const Scenario& s, const SimVantage& v, const std::string& url, int run_id, std::uint64_t stream) {
    Rng rng(derive_seed(s.seed, v.seed, std::string_view(url), static_cast<std::uint64_t>(run_id), stream));
    return rng.uniform01();
}

// The origin server answers, unless the network drops the exchange.
FetchResult from_origin(const Scenario& s, const SimVantage& v, const SimUrl& u, int run_id, long long extra_ms,
                        int status, long long timeout_ms) {
    if (u.origin.dead) {
        return transport_error(kExitDns, v.base_latency_ms);
    }
    if (v.flakiness > 0 && draw(s, v, u.url, run_id, 0) < v.flakiness) {
        return transport_error(kExitTimeout, timeout_ms);
    }
    long long elapsed = v.base_latency_ms + u.origin.delay_ms + extra_ms;
    if (elapsed > timeout_ms) {
        return transport_error(kExitTimeout, timeout_ms);
    }
    return {OutcomeKind::http_status, status, elapsed};
}

// First policy that matches and, when probabilistic, fires for this run.
// run_id < 0 asks which policy is in force regardless of chance.
const BlockPolicy* active_policy(const Scenario& s, const SimVantage& v, const SimUrl& u, int run_id) {
    for (std::size_t i = 0; i < v.policies.size(); ++i) {
        const auto& p = v.policies[i];
        if (!p.matches(u)) {
            continue;
        }
        if (p.probability && run_id >= 0 && draw(s, v, u.url, run_id, i + 1) >= *p.probability) {
            continue;
        }
        return &p;
    }
    return nullptr;
}

}  // namespace

FetchResult simulate_result(const Scenario& scenario, const SimVantage& vantage, const std::string& url, int run_id,
                            const std::string& user_agent, int timeout_s) {
    const long long timeout_ms = static_cast<long long>(timeout_s) * 1000;
    const auto* u = scenario.find_url(url);
    if (!u) {
        return {OutcomeKind::http_status, 404, vantage.base_latency_ms};
    }
    const auto* p = active_policy(scenario, vantage, *u, run_id);
    if (!p) {
        return from_origin(scenario, vantage, *u, run_id, 0, u->origin.status, timeout_ms);
    }
    switch (p->mechanism) {
        case Mechanism::dns_nxdomain:
        case Mechanism::dns_forged_ip:
            return transport_error(kExitDns, vantage.base_latency_ms);
        case Mechanism::tcp_rst:
            return transport_error(kExitReset, vantage.base_latency_ms);
        case Mechanism::timeout:
            return transport_error(kExitTimeout, timeout_ms);
        case Mechanism::throttle:
            return from_origin(scenario, vantage, *u, run_id, p->param, u->origin.status, timeout_ms);
        case Mechanism::http_block_page:
            return {OutcomeKind::http_status, static_cast<int>(p->param), vantage.base_latency_ms};
        case Mechanism::server_side_403_bots:
            return from_origin(scenario, vantage, *u, run_id, 0,
                               user_agent == scenario.tool_user_agent ? 403 : u->origin.status, timeout_ms);
    }
    return from_origin(scenario, vantage, *u, run_id, 0, u->origin.status, timeout_ms);
}

probe::FetchOutcome simulate_fetch(const Scenario& scenario, const std::string& url, const SimVantage& vantage,
                                   int run_id, int timeout_s) {
    auto r = simulate_result(scenario, vantage, url, run_id, scenario.tool_user_agent, timeout_s);
    probe::FetchOutcome o;
    o.url = url;
    o.vantage_id = vantage.id;
    o.run_id = run_id;
    o.kind = r.kind;
    o.code = r.code;
    o.elapsed_ms = r.elapsed_ms;
    o.timestamp = scenario.start + std::chrono::duration_cast<std::chrono::milliseconds>(scenario.run_interval) * run_id;
    return o;
}

analyze::OoniRecord simulate_ooni(const Scenario& scenario, const std::string& url, const SimVantage& vantage) {
    using analyze::AnomalyKind;
    using analyze::OoniVerdict;
    analyze::OoniRecord r{url, vantage.id, OoniVerdict::ok, std::nullopt, scenario.start};
    const auto* u = scenario.find_url(url);
    if (!u) {
        return r;
    }
    auto anomaly = [&](AnomalyKind k) {
        r.verdict = OoniVerdict::anomaly;
        r.kind = k;
        return r;
    };
    const auto* p = active_policy(scenario, vantage, *u, -1);
    if (p) {
        switch (p->mechanism) {
            case Mechanism::dns_nxdomain:
            case Mechanism::dns_forged_ip:
                return anomaly(AnomalyKind::dns);
            case Mechanism::tcp_rst:
            case Mechanism::timeout:
                return anomaly(AnomalyKind::tcp_ip);
            case Mechanism::throttle:
                if (!u->origin.dead && vantage.base_latency_ms + u->origin.delay_ms + p->param > 30'000) {
                    return anomaly(AnomalyKind::tcp_ip);
                }
                break;
            case Mechanism::http_block_page:
                return anomaly(AnomalyKind::http_diff);
            case Mechanism::server_side_403_bots:
                break;
        }
    }
    if (u->origin.dead) {
        r.verdict = OoniVerdict::error;
    }
    return r;
}

SimTransport::SimTransport(const Scenario& scenario, std::string vantage_id, std::string user_agent)
    : scenario_(scenario),
      vantage_(scenario.vantage(vantage_id)),
      user_agent_(user_agent.empty() ? scenario.tool_user_agent : std::move(user_agent)) {}

probe::FetchResult SimTransport::get(const std::string& url, int run_id, int timeout_s) {
    return simulate_result(scenario_, vantage_, url, run_id, user_agent_, timeout_s);
}

}  // namespace probegen::simnet
