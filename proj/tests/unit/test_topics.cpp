#include <gtest/gtest.h>

#include <cmath>
#include <fstream>

#include "probegen/common/error.hpp"
#include "probegen/common/jsonl.hpp"
#include "probegen/topics/exchange.hpp"
#include "probegen/topics/lda.hpp"
#include "probegen/topics/model.hpp"
#include "probegen/topics/porter.hpp"
#include "probegen/topics/tfidf.hpp"
#include "test_support.hpp"

using namespace probegen;
using namespace probegen::topics;

namespace {

nlp::EnglishBag bag(std::string url, std::map<std::string, int> counts) { return {std::move(url), std::move(counts)}; }

// Two well-separated themes; even docs use theme A, odd docs theme B.
std::vector<nlp::EnglishBag> two_theme_corpus(int n_docs) {
    std::vector<nlp::EnglishBag> docs;
    for (int d = 0; d < n_docs; ++d) {
        std::map<std::string, int> c;
        const char* prefix = d % 2 == 0 ? "a" : "b";
        for (int i = 0; i < 6; ++i) {
            c[std::string(prefix) + std::to_string((d + i) % 10)] += 1 + i % 2;
        }
        docs.push_back(bag("u" + std::to_string(d), c));
    }
    return docs;
}

}  // namespace

TEST(Porter, FrozenVectors) {
    std::ifstream in(test::test_data("porter/vectors.tsv"));
    ASSERT_TRUE(in);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        auto tab = line.find('\t');
        ASSERT_NE(tab, std::string::npos);
        EXPECT_EQ(porter_stem(line.substr(0, tab)), line.substr(tab + 1)) << line;
        ++n;
    }
    EXPECT_GT(n, 2000u);
}

TEST(Porter, ClassicExamples) {
    EXPECT_EQ(porter_stem("caresses"), "caress");
    EXPECT_EQ(porter_stem("ponies"), "poni");
    EXPECT_EQ(porter_stem("relational"), "relat");
    EXPECT_EQ(porter_stem("generalizations"), "gener");
    EXPECT_EQ(porter_stem("Hopping"), "hop");
    EXPECT_EQ(porter_stem("sky"), "sky");
}

TEST(StemFilter, MergesAndDiscards) {
    auto kept = stem_and_filter(bag("u", {{"protests", 2}, {"protesting", 1}, {"lawyers", 1}, {"courts", 1}, {"judge", 1}}), 4);
    ASSERT_TRUE(kept);
    EXPECT_EQ(kept->counts.at("protest"), 3);
    EXPECT_EQ(kept->counts.size(), 4u);
    EXPECT_FALSE(stem_and_filter(bag("u", {{"protests", 2}, {"protest", 1}, {"lawyer", 1}}), 4));
    auto multi = stem_and_filter(bag("u", {{"human rights", 1}, {"a", 1}, {"b", 1}, {"c", 1}}), 4);
    ASSERT_TRUE(multi);
    EXPECT_EQ(multi->counts.count("human right"), 1u);
}

TEST(Model, RankTermsOrder) {
    std::vector<ScoredTerm> t{{"b", 1.0}, {"a", 1.0}, {"c", 2.0}};
    rank_terms(t);
    EXPECT_EQ(t[0].term, "c");
    EXPECT_EQ(t[1].term, "a");
    EXPECT_EQ(t[2].term, "b");
    EXPECT_EQ(parse_method("bertopic"), Method::bertopic);
    EXPECT_FALSE(parse_method("kmeans"));
}

TEST(Tfidf, HandComputedValues) {
    // Topic 0: "x x y", topic 1: "y z". N = 2.
    std::map<int, std::vector<nlp::EnglishBag>> docs{{0, {bag("a", {{"x", 2}}), bag("b", {{"y", 1}})}},
                                                     {1, {bag("c", {{"y", 1}, {"z", 1}})}}};
    auto kw = tfidf_keywords(docs, 10);
    ASSERT_EQ(kw.size(), 2u);
    const double idf_unique = std::log(3.0 / 2.0) + 1.0;
    const double idf_shared = 1.0;
    ASSERT_EQ(kw[0].keywords.size(), 2u);
    EXPECT_EQ(kw[0].keywords[0].term, "x");
    EXPECT_NEAR(kw[0].keywords[0].score, 2.0 / 3.0 * idf_unique, 1e-12);
    EXPECT_NEAR(kw[0].keywords[1].score, 1.0 / 3.0 * idf_shared, 1e-12);
    EXPECT_EQ(kw[1].keywords[0].term, "z");
    EXPECT_NEAR(kw[1].keywords[0].score, 0.5 * idf_unique, 1e-12);
    EXPECT_EQ(kw[1].topic_id, 1);
}

TEST(Tfidf, TopNAndErrors) {
    std::map<int, std::vector<nlp::EnglishBag>> docs{{0, {bag("a", {{"p", 1}, {"q", 1}, {"r", 1}})}}, {1, {bag("b", {{"s", 1}})}}};
    auto kw = tfidf_keywords(docs, 2);
    EXPECT_EQ(kw[0].keywords.size(), 2u);
    EXPECT_EQ(kw[0].keywords[0].term, "p");  // tie broken by term
    EXPECT_THROW(tfidf_keywords(docs, 0), std::invalid_argument);
    std::map<int, std::vector<nlp::EnglishBag>> empty_topic{{0, {}}};
    EXPECT_THROW(tfidf_keywords(empty_topic, 3), std::invalid_argument);
}

TEST(Lda, SeparatesTwoThemesDeterministically) {
    auto corpus = two_theme_corpus(40);
    LdaParams p{2, 0.1, 0.01, 200, 5};
    int sweeps = 0;
    auto m = train_lda(corpus, p, [&](int s, const LdaModel&) { sweeps = s; });
    EXPECT_EQ(sweeps, 200);
    auto again = train_lda(corpus, p);
    EXPECT_EQ(m.topic_word, again.topic_word);
    EXPECT_EQ(m.doc_topic, again.doc_topic);

    int even_topic = m.training_assignment(0).topic_id;
    int agree = 0;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        int expected = d % 2 == 0 ? even_topic : 1 - even_topic;
        agree += m.training_assignment(d).topic_id == expected;
    }
    EXPECT_EQ(agree, 40);

    for (int k = 0; k < 2; ++k) {
        double sum = 0;
        for (std::size_t w = 0; w < m.V(); ++w) {
            sum += m.phi(k, static_cast<int>(w));
        }
        EXPECT_NEAR(sum, 1.0, 1e-9);
    }
}

TEST(Lda, FoldInAndScaleInvariance) {
    auto corpus = two_theme_corpus(40);
    auto m = train_lda(corpus, LdaParams{2, 0.1, 0.01, 100, 9});
    int a_topic = m.training_assignment(0).topic_id;
    auto doc = bag("new", {{"a1", 1}, {"a2", 2}, {"b3", 1}});
    auto t = assign_topic(m, doc);
    EXPECT_EQ(t.topic_id, a_topic);
    auto scaled = bag("new", {{"a1", 3}, {"a2", 6}, {"b3", 3}});
    EXPECT_EQ(assign_topic(m, scaled).topic_id, t.topic_id);
    EXPECT_THROW(assign_topic(m, bag("oov", {{"zzz", 1}})), std::domain_error);
}

TEST(Lda, JsonRoundTripAndErrors) {
    auto corpus = two_theme_corpus(10);
    auto m = train_lda(corpus, LdaParams{2, 0.1, 0.01, 20, 1});
    auto back = LdaModel::from_json(m.to_json());
    EXPECT_EQ(back.vocab, m.vocab);
    EXPECT_EQ(back.topic_word, m.topic_word);
    EXPECT_EQ(back.doc_urls, m.doc_urls);
    EXPECT_THROW(train_lda({}, LdaParams{}), std::invalid_argument);
    EXPECT_THROW(train_lda(corpus, LdaParams{1, 0.1, 0.01, 10, 1}), std::invalid_argument);
    EXPECT_THROW(train_lda(corpus, LdaParams{2, 0.1, 0.01, 0, 1}), std::invalid_argument);
}

TEST(Exchange, IngestsCheckedInFixture) {
    auto data = ingest_plugin_topics(test::test_data("exchange/top2vec_3x30.jsonl"));
    ASSERT_EQ(data.keywords.size(), 3u);
    EXPECT_EQ(data.assignments.size(), 9u);
    EXPECT_EQ(data.outliers_dropped, 1u);
    for (const auto& k : data.keywords) {
        EXPECT_EQ(k.method, Method::top2vec);
        EXPECT_EQ(k.keywords.size(), 30u);
    }
    EXPECT_EQ(data.keywords[0].keywords[0].term, "vpn");
}

TEST(Exchange, WriteThenIngest) {
    test::TempDir dir;
    std::vector<TopicKeywords> kw{{0, Method::bertopic, {{"a", 0.5}, {"b", 0.25}}}};
    std::vector<TopicAssignment> as{{"https://x.example/", 0, Method::bertopic, 0.7}};
    write_exchange(dir / "out.jsonl", kw, as);
    auto data = ingest_plugin_topics(dir / "out.jsonl");
    ASSERT_EQ(data.keywords.size(), 1u);
    EXPECT_EQ(data.keywords[0].keywords[1].term, "b");
    EXPECT_EQ(data.assignments[0].url, "https://x.example/");
}

TEST(Exchange, RejectsMalformedRecords) {
    test::TempDir dir;
    auto check = [&](const std::string& body, std::size_t line) {
        auto p = dir / "bad.jsonl";
        std::ofstream(p) << body;
        try {
            ingest_plugin_topics(p);
            ADD_FAILURE() << "accepted: " << body;
        } catch (const SchemaError& e) {
            EXPECT_EQ(e.line(), line) << e.what();
        }
    };
    const std::string kw = R"({"method":"top2vec","topic_id":0,"keywords":[{"term":"a","score":1}]})";
    check("", 0);
    check(R"({"method":"lda","topic_id":0,"keywords":[{"term":"a","score":1}]})" "\n", 1);
    check(kw + "\n" + kw + "\n", 2);
    check(R"({"method":"top2vec","topic_id":0,"keywords":[{"term":"a","score":1},{"term":"a","score":0.5}]})" "\n", 1);
    check(kw + "\n" + R"({"type":"keywords","url":"u","method":"top2vec","topic_id":0,"score":1})" "\n", 2);
    check(kw + "\n" + R"({"url":"u","method":"top2vec","topic_id":5,"score":1})" "\n", 2);
    check(R"({"method":"top2vec","topic_id":0,"keywords":[{"term":"a","score":"high"}]})" "\n", 1);
    check("not json\n", 1);
}
