#include <gtest/gtest.h>

#include "probegen/common/error.hpp"
#include "probegen/simnet/scenario.hpp"
#include "probegen/simnet/simulator.hpp"
#include "test_support.hpp"

using namespace probegen;
using namespace probegen::simnet;
using probe::OutcomeKind;

namespace {

Scenario small() {
    return scenario_from_json(Json::parse(R"({
      "seed": 1, "n_runs": 10,
      "domains": [
        {"name": "dns.com", "ip": "192.0.2.1"},
        {"name": "rst.com", "ip": "192.0.2.2"},
        {"name": "page.com", "ip": "192.0.2.3", "urls": ["https://page.com/", "https://sub.page.com/a"]},
        {"name": "slow.com", "ip": "192.0.2.4", "origin": {"status": 200, "delay_ms": 100}},
        {"name": "bot.com", "ip": "192.0.2.5"},
        {"name": "dead.com", "ip": "192.0.2.6", "origin": {"dead": true}},
        {"name": "odd.com", "ip": "192.0.2.7", "urls": [{"url": "https://odd.com/gone", "status": 404}]},
        {"name": "maybe.com", "ip": "192.0.2.8"}
      ],
      "vantages": [
        {"id": "free", "policies": [{"match": {"pld": "bot.com"}, "mechanism": "server_side_403_bots"}]},
        {"id": "cens", "base_latency_ms": 100, "seed": 5, "policies": [
          {"match": {"pld": "dns.com"}, "mechanism": "dns_nxdomain"},
          {"match": {"ip": "192.0.2.2"}, "mechanism": "tcp_rst"},
          {"match": {"exact": "sub.page.com"}, "mechanism": "http_block_page", "status": 451},
          {"match": {"pld": "slow.com"}, "mechanism": "throttle", "delay_ms": 40000},
          {"match": {"pld": "maybe.com"}, "mechanism": "tcp_rst", "probability": 0.5},
          {"match": {"pld": "bot.com"}, "mechanism": "server_side_403_bots"}
        ]}
      ],
      "baseline_vantages": ["free"]
    })"));
}

}  // namespace

TEST(Scenario, ParsesDefaultsAndRoundTrips) {
    auto s = small();
    EXPECT_EQ(s.n_runs, 10);
    EXPECT_EQ(s.run_interval, std::chrono::hours(72));
    EXPECT_EQ(s.urls().size(), 9u);
    ASSERT_TRUE(s.find_url("https://dns.com/"));
    EXPECT_EQ(s.find_url("https://dns.com/")->domain, "dns.com");
    EXPECT_THROW(s.vantage("nope"), ConfigError);
    auto again = scenario_from_json(to_json(s));
    EXPECT_EQ(to_json(again), to_json(s));
}

TEST(Scenario, RejectsBadInput) {
    EXPECT_THROW(scenario_from_json(Json::parse(R"({"domains":[{"name":"a.com"}],"vantages":[{"id":"v","policies":[{"match":{"pld":"a.com"},"mechanism":"teleport"}]}]})")),
                 ConfigError);
    EXPECT_THROW(scenario_from_json(Json::parse(R"({"domains":[],"vantages":[{"id":"v"}],"baseline_vantages":["x"]})")),
                 ConfigError);
}

TEST(Simulator, MechanismsMapToOutcomes) {
    auto s = small();
    const auto& c = s.vantage("cens");
    const auto& f = s.vantage("free");
    const auto ua = s.tool_user_agent;
    auto r = [&](const SimVantage& v, const char* url) { return simulate_result(s, v, url, 0, ua); };

    EXPECT_EQ(r(c, "https://dns.com/").code, kExitDns);
    EXPECT_EQ(r(c, "https://rst.com/").code, kExitReset);
    EXPECT_EQ(r(c, "https://rst.com/").kind, OutcomeKind::transport_error);
    EXPECT_EQ(r(c, "https://sub.page.com/a").code, 451);
    EXPECT_EQ(r(c, "https://page.com/").code, 200);
    auto slow = r(c, "https://slow.com/");
    EXPECT_EQ(slow.code, kExitTimeout);
    EXPECT_EQ(slow.elapsed_ms, 30000);
    EXPECT_EQ(r(f, "https://slow.com/").code, 200);
    EXPECT_EQ(r(f, "https://bot.com/").code, 403);
    EXPECT_EQ(simulate_result(s, f, "https://bot.com/", 0, "Mozilla/5.0").code, 200);
    EXPECT_EQ(r(f, "https://dead.com/").code, kExitDns);
    EXPECT_EQ(r(f, "https://odd.com/gone").code, 404);
    EXPECT_EQ(r(f, "https://unknown.com/").code, 404);
}

TEST(Simulator, ProbabilisticPolicyIsSeeded) {
    auto s = small();
    const auto& c = s.vantage("cens");
    int resets = 0;
    for (int run = 0; run < 200; ++run) {
        auto a = simulate_result(s, c, "https://maybe.com/", run, s.tool_user_agent);
        auto b = simulate_result(s, c, "https://maybe.com/", run, s.tool_user_agent);
        EXPECT_EQ(a.code, b.code);
        resets += a.code == kExitReset;
    }
    EXPECT_GT(resets, 70);
    EXPECT_LT(resets, 130);
}

TEST(Simulator, FetchStampsVirtualClock) {
    auto s = small();
    auto o = simulate_fetch(s, "https://page.com/", s.vantage("free"), 2);
    EXPECT_EQ(o.timestamp, s.start + std::chrono::hours(144));
    EXPECT_EQ(o.vantage_id, "free");
}

TEST(Simulator, OoniView) {
    auto s = small();
    const auto& c = s.vantage("cens");
    const auto& f = s.vantage("free");
    EXPECT_EQ(simulate_ooni(s, "https://dns.com/", c).kind, analyze::AnomalyKind::dns);
    EXPECT_EQ(simulate_ooni(s, "https://rst.com/", c).kind, analyze::AnomalyKind::tcp_ip);
    EXPECT_EQ(simulate_ooni(s, "https://sub.page.com/a", c).kind, analyze::AnomalyKind::http_diff);
    EXPECT_EQ(simulate_ooni(s, "https://slow.com/", c).kind, analyze::AnomalyKind::tcp_ip);
    EXPECT_EQ(simulate_ooni(s, "https://bot.com/", f).verdict, analyze::OoniVerdict::ok);
    EXPECT_EQ(simulate_ooni(s, "https://dead.com/", f).verdict, analyze::OoniVerdict::error);
    EXPECT_EQ(simulate_ooni(s, "https://page.com/", c).verdict, analyze::OoniVerdict::ok);
}

TEST(Simulator, BlockedDomainsTruth) {
    auto s = small();
    EXPECT_EQ(blocked_domains(s), (std::vector<std::string>{"dns.com", "page.com", "rst.com"}));
}

TEST(Simulator, TransportAdapter) {
    auto s = small();
    SimTransport t(s, "cens");
    EXPECT_EQ(t.get("https://dns.com/", 0, 30).code, kExitDns);
    EXPECT_TRUE(t.reachable());
    EXPECT_THROW(SimTransport(s, "missing"), ConfigError);
}

TEST(Simulator, AcceptanceScenarioFixtureLoads) {
    auto s = load_scenario(test::fixture("simnet/acceptance_scenario.json"));
    EXPECT_EQ(s.domains.size(), 20u);
    EXPECT_EQ(s.baseline_vantages.size(), 5u);
    EXPECT_EQ(blocked_domains(s).size(), 7u);
}
