#include <gtest/gtest.h>

#include <set>

#include "probegen/common/rng.hpp"
#include "probegen/querygen/sampler.hpp"
#include "probegen/querygen/tiers.hpp"

using namespace probegen;
using namespace probegen::querygen;

namespace {

std::vector<std::string> ranked(int n) {
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) {
        v.push_back("k" + std::to_string(i));
    }
    return v;
}

std::array<std::size_t, 4> sizes(const TieredKeywords& t) {
    return {t.tiers[0].size(), t.tiers[1].size(), t.tiers[2].size(), t.tiers[3].size()};
}

}  // namespace

TEST(Tiers, QuartileSplit) {
    EXPECT_EQ(sizes(tier_keywords(0, QueryMethod::lda, ranked(8))), (std::array<std::size_t, 4>{2, 2, 2, 2}));
    EXPECT_EQ(sizes(tier_keywords(0, QueryMethod::lda, ranked(10))), (std::array<std::size_t, 4>{3, 3, 2, 2}));
    EXPECT_EQ(sizes(tier_keywords(0, QueryMethod::lda, ranked(3))), (std::array<std::size_t, 4>{1, 1, 1, 0}));
    EXPECT_EQ(sizes(tier_keywords(0, QueryMethod::lda, ranked(30))), (std::array<std::size_t, 4>{8, 8, 7, 7}));
    auto t = tier_keywords(2, QueryMethod::top2vec, ranked(5));
    EXPECT_EQ(t.tiers[0][0].term, "k0");
    EXPECT_EQ(t.tiers[3].back().rank, 4);
    EXPECT_EQ(t.total(), 5u);
}

TEST(Tiers, RejectsEmptyAndRepeats) {
    EXPECT_THROW(tier_keywords(0, QueryMethod::lda, {}), std::invalid_argument);
    EXPECT_THROW(tier_keywords(0, QueryMethod::lda, {"a", "b", "a"}), std::invalid_argument);
}

TEST(TierCounts, CapAndOverflow) {
    // Shares scaled so tier 1 would take 4 of 9; the cap holds it at 3.
    auto c = tier_counts({0.5, 0.4, 0.2, 0.0}, 9, {10, 10, 10, 10});
    EXPECT_LE(c[0], 3);
    EXPECT_EQ(c[0] + c[1] + c[2] + c[3], 9);
    // Tier 4 empty: its share moves to tier 3, then 2.
    auto d = tier_counts({0.25, 0.05, 0.05, 0.65}, 8, {5, 5, 5, 0});
    EXPECT_EQ(d[3], 0);
    EXPECT_EQ(d[0] + d[1] + d[2], 8);
    EXPECT_THROW(tier_counts({0.5, 0.0, 0.0, 0.5}, 4, {4, 0, 0, 0}), InsufficientKeywords);
}

TEST(Sampler, InvariantsHold) {
    auto tiers = tier_keywords(0, QueryMethod::lda, ranked(30));
    Rng rng(123);
    for (int i = 0; i < 2000; ++i) {
        int size = static_cast<int>(rng.between(kMinQuerySize, kMaxQuerySize));
        auto q = sample_query(tiers, rng, size);
        ASSERT_EQ(static_cast<int>(q.keywords.size()), size);
        ASSERT_LE(q.tier_histogram[0], kMaxTier1);
        std::set<std::string> uniq;
        for (const auto& k : q.keywords) {
            uniq.insert(k.term);
        }
        ASSERT_EQ(uniq.size(), q.keywords.size());
    }
}

TEST(Sampler, SameSeedSameQuery) {
    auto tiers = tier_keywords(0, QueryMethod::lda, ranked(20));
    Rng a(77), b(77);
    EXPECT_EQ(sample_query(tiers, a, 7).terms(), sample_query(tiers, b, 7).terms());
}

TEST(Sampler, SizeNineTierOneBounds) {
    auto tiers = tier_keywords(0, QueryMethod::lda, ranked(40));
    Rng rng(5);
    for (int i = 0; i < 10000; ++i) {
        auto q = sample_query(tiers, rng, 9);
        ASSERT_GE(q.tier_histogram[0], 1);
        ASSERT_LE(q.tier_histogram[0], 3);
    }
}

TEST(Sampler, ErrorsOnBadSizeOrThinTiers) {
    auto tiers = tier_keywords(0, QueryMethod::lda, ranked(30));
    Rng rng(1);
    EXPECT_THROW(sample_query(tiers, rng, 3), std::invalid_argument);
    EXPECT_THROW(sample_query(tiers, rng, 10), std::invalid_argument);
    TieredKeywords only_t1;
    only_t1.tiers[0] = {{"a", 0}, {"b", 1}, {"c", 2}, {"d", 3}};
    EXPECT_THROW(sample_query(only_t1, rng, 4), InsufficientKeywords);
}

TEST(Sampler, OrderIsPermuted) {
    auto tiers = tier_keywords(0, QueryMethod::lda, ranked(8));
    Rng rng(3);
    std::set<std::vector<std::string>> orders;
    for (int i = 0; i < 200; ++i) {
        auto q = sample_query(tiers, rng, 8);
        orders.insert(q.terms());
    }
    EXPECT_GT(orders.size(), 50u);
}

TEST(Generate, BudgetUniquenessAndDeterminism) {
    std::vector<TieredKeywords> topics{tier_keywords(0, QueryMethod::lda, ranked(30)),
                                       tier_keywords(1, QueryMethod::lda_gpt, ranked(12)),
                                       tier_keywords(2, QueryMethod::top2vec, ranked(3))};
    GenerateOptions o;
    o.per_topic_budget = 6;
    auto a = generate_queries(topics, 99, o, 1);
    auto b = generate_queries(topics, 99, o, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(to_json(a[i]), to_json(b[i]));
    }
    std::map<int, int> per_topic;
    std::set<std::string> ids;
    for (const auto& q : a) {
        ++per_topic[q.topic_id];
        ids.insert(q.query_id);
    }
    EXPECT_EQ(per_topic[0], 6);
    EXPECT_EQ(per_topic[1], 6);
    EXPECT_EQ(per_topic.count(2), 0u);  // three keywords cannot fill a query
    EXPECT_EQ(ids.size(), a.size());

    auto c = generate_queries(topics, 100, o, 1);
    EXPECT_NE(to_json(a[0]), to_json(c[0]));
}

TEST(Generate, JsonRoundTrip) {
    std::vector<TieredKeywords> topics{tier_keywords(0, QueryMethod::bertopic, ranked(20))};
    auto q = generate_queries(topics, 1)[0];
    auto back = search_query_from_json(to_json(q));
    EXPECT_EQ(to_json(back), to_json(q));
    EXPECT_EQ(back.method, QueryMethod::bertopic);
    EXPECT_TRUE(q.seed_trace.contains("stream_seed") || q.seed_trace.is_object());
}
