#include <gtest/gtest.h>

#include "probegen/aggregate/summary.hpp"
#include "probegen/common/time.hpp"

using namespace probegen;
using namespace probegen::aggregate;
using probe::FetchOutcome;
using probe::OutcomeKind;

namespace {

std::vector<FetchOutcome> runs(const std::string& url, const std::string& v, int n_ok, int n_fail,
                               OutcomeKind fail_kind = OutcomeKind::transport_error, int fail_code = 6) {
    std::vector<FetchOutcome> out;
    auto start = parse_utc("2024-01-01T00:00:00Z");
    for (int i = 0; i < n_ok + n_fail; ++i) {
        bool ok = i >= n_fail;
        out.push_back({url, v, i, ok ? OutcomeKind::http_status : fail_kind, ok ? 200 : fail_code, 10,
                       start + std::chrono::hours(24 * i)});
    }
    return out;
}

UrlRunSummary consistent(const std::string& url, const std::string& v, ResponseClass c) {
    UrlRunSummary s;
    s.url = url;
    s.vantage_id = v;
    s.consistent = c;
    s.n_runs = 50;
    s.counts[c] = 50;
    return s;
}

UrlRunSummary inconsistent(const std::string& url, const std::string& v) {
    UrlRunSummary s;
    s.url = url;
    s.vantage_id = v;
    s.n_runs = 50;
    s.counts[ResponseClass::Accessible] = 30;
    s.counts[ResponseClass::Inaccessible] = 20;
    return s;
}

}  // namespace

TEST(Consistency, ThresholdArithmetic) {
    auto s48 = summarize(runs("u", "v", 48, 2));
    EXPECT_EQ(s48.consistent, ResponseClass::Accessible);
    auto s47 = summarize(runs("u", "v", 47, 3));
    EXPECT_FALSE(s47.consistent);
    auto s8 = summarize(runs("u", "v", 8, 0));
    EXPECT_EQ(s8.consistent, ResponseClass::Accessible);
    auto strict = summarize(runs("u", "v", 19, 1), {0.95, true});
    EXPECT_FALSE(strict.consistent);
    EXPECT_EQ(summarize(runs("u", "v", 19, 1), {0.95, false}).consistent, ResponseClass::Accessible);
}

TEST(Consistency, CountsCodesAndSpan) {
    auto s = summarize(runs("u", "v", 1, 49, OutcomeKind::transport_error, 56));
    EXPECT_EQ(s.consistent, ResponseClass::Inaccessible);
    EXPECT_EQ(s.exit_codes.at(56), 49);
    EXPECT_EQ(s.http_codes.at(200), 1);
    EXPECT_EQ(s.n_runs, 50);
    EXPECT_DOUBLE_EQ(days_between(s.first_seen, s.last_seen), 49.0);
    auto back = url_run_summary_from_json(to_json(s));
    EXPECT_EQ(to_json(back), to_json(s));
}

TEST(Consistency, RejectsMixedInput) {
    auto mixed = runs("u", "v", 2, 0);
    mixed[1].url = "other";
    EXPECT_THROW(summarize(mixed), std::invalid_argument);
    EXPECT_THROW(summarize(std::span<const FetchOutcome>{}), std::invalid_argument);
}

TEST(Consistency, SummarizeAllGroupsAndDedups) {
    auto all = runs("b", "v2", 5, 0);
    auto more = runs("a", "v1", 5, 0);
    all.insert(all.end(), more.begin(), more.end());
    all.push_back(all.front());  // repeated (url, vantage, run)
    auto s = summarize_all(all);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].vantage_id, "v1");
    EXPECT_EQ(s[1].n_runs, 5);
}

TEST(Baseline, RequiresAgreementEverywhere) {
    std::vector<UrlRunSummary> s{consistent("u1", "b1", ResponseClass::Accessible),
                                 consistent("u1", "b2", ResponseClass::Accessible),
                                 consistent("u2", "b1", ResponseClass::Accessible),
                                 consistent("u2", "b2", ResponseClass::Error),
                                 consistent("u3", "b1", ResponseClass::Accessible),
                                 inconsistent("u3", "b2"),
                                 consistent("u4", "b1", ResponseClass::Accessible)};
    auto b = build_baseline(s, {"b1", "b2"});
    EXPECT_EQ(b.entries.size(), 1u);
    EXPECT_EQ(b.entries.at("u1"), ResponseClass::Accessible);
}

TEST(Diff, TruthTable) {
    BaselineSet base;
    base.entries = {{"acc", ResponseClass::Accessible}, {"inacc", ResponseClass::Inaccessible}, {"err", ResponseClass::Error}};
    struct Case {
        std::string url;
        std::optional<ResponseClass> vantage;
        bool expect_diff;
        std::optional<ResponseClass> expect_base;
    };
    const std::vector<Case> cases{
        {"acc", std::nullopt, false, std::nullopt},
        {"acc", ResponseClass::Accessible, false, std::nullopt},
        {"acc", ResponseClass::Inaccessible, true, ResponseClass::Accessible},
        {"acc", ResponseClass::Error, true, ResponseClass::Accessible},
        {"inacc", ResponseClass::Inaccessible, false, std::nullopt},
        {"inacc", ResponseClass::Accessible, true, ResponseClass::Inaccessible},
        {"err", ResponseClass::Error, false, std::nullopt},
        {"err", ResponseClass::Inaccessible, true, ResponseClass::Error},
        {"missing", std::nullopt, false, std::nullopt},
        {"missing", ResponseClass::Accessible, true, std::nullopt},
        {"missing", ResponseClass::Inaccessible, true, std::nullopt},
        {"missing", ResponseClass::Error, true, std::nullopt},
    };
    for (const auto& c : cases) {
        auto s = c.vantage ? consistent(c.url, "x", *c.vantage) : inconsistent(c.url, "x");
        auto d = diff(s, base);
        EXPECT_EQ(d.has_value(), c.expect_diff) << c.url;
        if (d) {
            EXPECT_EQ(d->cls, *c.vantage);
            EXPECT_EQ(d->baseline_class, c.expect_base) << c.url;
        }
    }
}

TEST(Diff, AllSkipsBaselineVantages) {
    BaselineSet base;
    base.entries = {{"u", ResponseClass::Accessible}};
    std::vector<UrlRunSummary> s{consistent("u", "b1", ResponseClass::Inaccessible),
                                 consistent("u", "x", ResponseClass::Inaccessible)};
    auto d = diff_all(s, base, {"b1"});
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].vantage_id, "x");
    auto back = diff_record_from_json(to_json(d[0]));
    EXPECT_EQ(to_json(back), to_json(d[0]));
}
