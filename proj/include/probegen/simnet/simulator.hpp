#pragma once

#include <string>

#include "probegen/analyze/ooni.hpp"
#include "probegen/probe/outcome.hpp"
#include "probegen/probe/transport.hpp"
#include "probegen/simnet/scenario.hpp"

namespace probegen::simnet {

// Exit codes the simulated mechanisms produce; same numbering as real fetches.
inline constexpr int kExitDns = 6;
inline constexpr int kExitReset = 56;
inline constexpr int kExitTimeout = 28;

// One simulated GET. Pure in (scenario, vantage, url, run_id, user_agent,
// timeout_s). Unknown URLs answer 404.
probe::FetchResult simulate_result(const Scenario& scenario, const SimVantage& vantage, const std::string& url,
                                   int run_id, const std::string& user_agent, int timeout_s = 30);

// simulate_result stamped with the scenario's virtual clock
// (start + run_id * run_interval) and the tool user agent.
probe::FetchOutcome simulate_fetch(const Scenario& scenario, const std::string& url, const SimVantage& vantage,
                                   int run_id, int timeout_s = 30);

// What an OONI web-connectivity test would report for the URL at the vantage.
// A dead origin fails the control measurement as well, so the verdict is error.
analyze::OoniRecord simulate_ooni(const Scenario& scenario, const std::string& url, const SimVantage& vantage);

// Transport over the simulator for one vantage, so probe campaigns run unchanged.
class SimTransport : public probe::Transport {
public:
    SimTransport(const Scenario& scenario, std::string vantage_id, std::string user_agent = {});
    probe::FetchResult get(const std::string& url, int run_id, int timeout_s) override;

private:
    const Scenario& scenario_;
    const SimVantage& vantage_;
    std::string user_agent_;
};

}  // namespace probegen::simnet
