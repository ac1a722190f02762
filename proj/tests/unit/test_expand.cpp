#include <gtest/gtest.h>

#include <fstream>

#include "probegen/common/error.hpp"
#include "probegen/expand/clients.hpp"
#include "probegen/expand/expand.hpp"
#include "probegen/expand/prompt.hpp"
#include "test_support.hpp"

using namespace probegen;
using namespace probegen::expand;

TEST(Prompt, PythonListLiteral) {
    EXPECT_EQ(python_list_literal({"botanics", "plants"}), "['botanics', 'plants']");
    EXPECT_EQ(python_list_literal({"o'neill"}), "[\"o'neill\"]");
    EXPECT_EQ(python_list_literal({}), "[]");
}

TEST(Prompt, DefaultTemplateRenders) {
    auto p = PromptTemplate::load_default();
    auto r = p.render({"vpn", "proxy"});
    EXPECT_NE(r.find("LIST_OF_WORDS='['vpn', 'proxy']'"), std::string::npos);
    EXPECT_EQ(r.find("{list_of_words}"), std::string::npos);
    EXPECT_NE(r.find("30 NEW keywords"), std::string::npos);
    EXPECT_THROW(PromptTemplate("no placeholder"), ConfigError);
}

TEST(Prompt, ParsesListAndLineReplies) {
    EXPECT_EQ(parse_keyword_response("['a b', \"c\", 'd']"), (std::vector<std::string>{"a b", "c", "d"}));
    EXPECT_EQ(parse_keyword_response("Sure:\n1. great firewall\n2) vpn service\n- \"tor\"\n* proxy"),
              (std::vector<std::string>{"great firewall", "vpn service", "tor", "proxy"}));
    EXPECT_EQ(parse_keyword_response("[\"x\", \"y\"]"), (std::vector<std::string>{"x", "y"}));
    EXPECT_FALSE(parse_keyword_response(""));
    EXPECT_FALSE(parse_keyword_response("   \n  \n"));
}

TEST(LlmExpand, FiltersSeedAndDuplicates) {
    ReplayLlmClient client;
    auto prompt = PromptTemplate("words={list_of_words}");
    client.add(prompt.render({"vpn", "proxy"}), {"VPN\nGreat  Firewall\ngreat firewall\ntor\nProxy"});
    auto e = llm_expand(3, {"vpn", "proxy"}, client, prompt);
    EXPECT_EQ(e.topic_id, 3);
    EXPECT_EQ(e.method, ExpansionMethod::lda_gpt);
    EXPECT_EQ(e.terms(), (std::vector<std::string>{"great firewall", "tor"}));
    EXPECT_EQ(e.keywords[0].provenance, Provenance::llm);
}

TEST(LlmExpand, RetriesOnceThenFails) {
    auto prompt = PromptTemplate("w={list_of_words}");
    ReplayLlmClient ok;
    ok.add(prompt.render({"a"}), {"   ", "b\nc"});
    EXPECT_EQ(llm_expand(0, {"a"}, ok, prompt).terms(), (std::vector<std::string>{"b", "c"}));
    EXPECT_EQ(ok.calls(), 2u);

    ReplayLlmClient bad;
    bad.add(prompt.render({"a"}), {"", ""});
    EXPECT_THROW(llm_expand(0, {"a"}, bad, prompt), ExpansionError);

    ReplayLlmClient only_seed;
    only_seed.add(prompt.render({"a"}), {"A\na"});
    EXPECT_THROW(llm_expand(0, {"a"}, only_seed, prompt), ExpansionError);
}

TEST(LlmExpand, TruncatesToMax) {
    auto prompt = PromptTemplate("w={list_of_words}");
    ReplayLlmClient client;
    client.add(prompt.render({"s"}), {"a\nb\nc\nd"});
    LlmExpandOptions o;
    o.max_keywords = 2;
    EXPECT_EQ(llm_expand(0, {"s"}, client, prompt, o).terms(), (std::vector<std::string>{"a", "b"}));
}

TEST(LlmExpand, ClientErrorsPropagate) {
    auto prompt = PromptTemplate("w={list_of_words}");
    ReplayLlmClient empty;
    EXPECT_THROW(llm_expand(0, {"s"}, empty, prompt), ClientError);
}

TEST(ReplayLlm, RulesAndExactRecords) {
    test::TempDir dir;
    std::ofstream(dir / "r.jsonl") << R"({"prompt":"exact prompt","response":"x"})" "\n"
                                   << R"({"prompt_contains":["vpn","proxy"],"response":["first","second"]})" "\n"
                                   << R"({"prompt_contains":["vpn"],"response":"vpn only"})" "\n";
    ReplayLlmClient c(dir / "r.jsonl");
    EXPECT_EQ(c.complete("exact prompt"), "x");
    EXPECT_EQ(c.complete("about vpn and proxy"), "first");
    EXPECT_EQ(c.complete("about vpn and proxy"), "second");
    EXPECT_EQ(c.complete("about vpn and proxy"), "second");
    EXPECT_EQ(c.complete("just vpn"), "vpn only");
    EXPECT_THROW(c.complete("unrelated"), ClientError);
    EXPECT_EQ(llm_request_key("abc"), llm_request_key("abc"));
}

TEST(Trends, MergeOrderAndDedup) {
    ReplayTrendsClient client;
    client.add("vpn", kDefaultTrendsWindow, {{"vpn free", "Best VPN"}, {"vpn china"}});
    client.add("proxy", kDefaultTrendsWindow, {{"free proxy", "best vpn"}, {"socks5 proxy"}});
    auto e = trends_expand(1, "vpn", "proxy", client);
    EXPECT_EQ(e.method, ExpansionMethod::top2vec_trends);
    EXPECT_EQ(e.terms(), (std::vector<std::string>{"vpn free", "best vpn", "free proxy", "vpn china", "socks5 proxy"}));
    EXPECT_EQ(e.keywords[0].provenance, Provenance::trends_top);
    EXPECT_EQ(e.keywords[3].provenance, Provenance::trends_rising);

    TrendsExpandOptions o;
    o.max_keywords = 3;
    EXPECT_EQ(trends_expand(1, "vpn", "proxy", client, o).keywords.size(), 3u);
}

TEST(Trends, FailureGivesEmptyResult) {
    ReplayTrendsClient client;
    client.add_failure("vpn", kDefaultTrendsWindow, true);
    client.add("proxy", kDefaultTrendsWindow, {{"free proxy"}, {}});
    EXPECT_TRUE(trends_expand(2, "vpn", "proxy", client).keywords.empty());
    EXPECT_TRUE(trends_expand(2, "unknown", "proxy", client).keywords.empty());
}

TEST(Trends, TopTwo) {
    topics::TopicKeywords t{0, topics::Method::top2vec, {{"b", 0.9}, {"a", 0.9}, {"c", 0.5}}};
    auto two = top_two(t);
    ASSERT_TRUE(two);
    EXPECT_EQ(two->first, "a");
    EXPECT_EQ(two->second, "b");
    topics::TopicKeywords one{0, topics::Method::top2vec, {{"a", 1}}};
    EXPECT_FALSE(top_two(one));
}

TEST(Expanded, JsonRoundTrip) {
    ExpandedKeywords e{4, ExpansionMethod::top2vec_trends, {{"x", Provenance::trends_rising}}};
    auto back = expanded_keywords_from_json(to_json(e));
    EXPECT_EQ(back.topic_id, 4);
    EXPECT_EQ(back.method, ExpansionMethod::top2vec_trends);
    EXPECT_EQ(back.keywords[0].provenance, Provenance::trends_rising);
}

TEST(ReplayTrends, FixtureFileLoads) {
    ReplayTrendsClient c(test::fixture("clients/trends_replay.jsonl"));
    auto r = c.related("vpn", std::string(kDefaultTrendsWindow));
    EXPECT_FALSE(r.top.empty());
    EXPECT_FALSE(r.rising.empty());
}

TEST(Prompt, ListAfterPreamble) {
    EXPECT_EQ(parse_keyword_response("Here you go:\n['a', 'b']"), (std::vector<std::string>{"a", "b"}));
}
