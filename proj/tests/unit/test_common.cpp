#include <gtest/gtest.h>

#include <fstream>

#include "probegen/common/error.hpp"
#include "probegen/common/exit_codes.hpp"
#include "probegen/common/hash.hpp"
#include "probegen/common/jsonl.hpp"
#include "probegen/common/log.hpp"
#include "probegen/common/parallel.hpp"
#include "probegen/common/rate_limiter.hpp"
#include "probegen/common/rng.hpp"
#include "probegen/common/text.hpp"
#include "probegen/common/time.hpp"
#include "probegen/common/url.hpp"
#include "test_support.hpp"

using namespace probegen;

TEST(Rng, SameSeedSameStream) {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(a.next(), b.next());
    }
    EXPECT_EQ(a.draws(), 100u);
}

TEST(Rng, BelowStaysInRange) {
    Rng r(3);
    std::vector<int> hits(7, 0);
    for (int i = 0; i < 7000; ++i) {
        auto v = r.below(7);
        ASSERT_LT(v, 7u);
        ++hits[v];
    }
    for (int h : hits) {
        EXPECT_GT(h, 800);
    }
}

TEST(Rng, Uniform01IsHalfOpen) {
    Rng r(9);
    for (int i = 0; i < 10000; ++i) {
        double u = r.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

TEST(Rng, DeriveSeedSeparatesLabels) {
    EXPECT_EQ(derive_seed(1, "probe"), derive_seed(1, "probe"));
    EXPECT_NE(derive_seed(1, "probe"), derive_seed(1, "queries"));
    EXPECT_NE(derive_seed(1, "probe"), derive_seed(2, "probe"));
    EXPECT_EQ(derive_seed(5, "a", std::uint64_t{3}), derive_seed(derive_seed(5, "a"), std::uint64_t{3}));
    EXPECT_NE(derive_seed(5, "a", "b"), derive_seed(5, "b", "a"));
}

TEST(Rng, ShuffleIsPermutation) {
    std::vector<int> v{1, 2, 3, 4, 5, 6, 7, 8};
    Rng r(11);
    r.shuffle(std::span<int>(v));
    auto sorted = v;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
}

TEST(Url, ParsesAndNormalizesHost) {
    auto u = parse_url("HTTPS://WWW.Example.COM.:8443/a/b?q=1#f");
    ASSERT_TRUE(u);
    EXPECT_EQ(u->scheme, "https");
    EXPECT_EQ(u->host, "www.example.com");
    EXPECT_EQ(u->port, 8443);
    EXPECT_EQ(u->target, "/a/b?q=1#f");
}

TEST(Url, RejectsNonHttp) {
    EXPECT_FALSE(parse_url("ftp://example.com/"));
    EXPECT_FALSE(parse_url("example.com"));
    EXPECT_FALSE(parse_url("http:///nohost"));
    EXPECT_EQ(host_of("mailto:x@example.com"), "");
}

TEST(Url, EmptyPathBecomesSlash) {
    auto u = parse_url("http://example.org");
    ASSERT_TRUE(u);
    EXPECT_EQ(u->target, "/");
    EXPECT_EQ(u->str(), "http://example.org/");
}

TEST(Url, HostWithin) {
    EXPECT_TRUE(host_within("example.com", "example.com"));
    EXPECT_TRUE(host_within("a.b.example.com", "example.com"));
    EXPECT_FALSE(host_within("badexample.com", "example.com"));
    EXPECT_FALSE(host_within("example.com", "a.example.com"));
}

TEST(Text, ScalarCountCountsCodePoints) {
    EXPECT_EQ(text::scalar_count("abc"), 3u);
    EXPECT_EQ(text::scalar_count("\xc3\xa9t\xc3\xa9"), 3u);   // été
    EXPECT_EQ(text::scalar_count("\xe4\xb8\xad\xe6\x96\x87"), 2u);  // 中文
    EXPECT_EQ(text::scalar_count("\xf0\x9f\x98\x80"), 1u);  // emoji
}

TEST(Text, SanitizeReplacesInvalidBytes) {
    std::string bad = "a\xff" "b";
    EXPECT_FALSE(text::is_valid_utf8(bad));
    auto fixed = text::sanitize_utf8(bad);
    EXPECT_TRUE(text::is_valid_utf8(fixed));
    EXPECT_EQ(fixed, "a\xef\xbf\xbd" "b");
}

TEST(Text, NormalizeTerm) {
    EXPECT_EQ(text::normalize_term("  Great   FIREWALL \t"), "great firewall");
    EXPECT_EQ(text::to_lower("\xc3\x89T\xc3\x89"), "\xc3\xa9t\xc3\xa9");
}

TEST(Text, TranscodesLegacyCharsets) {
    auto gbk = text::transcode_to_utf8("\xd6\xd0\xce\xc4", "gbk");
    ASSERT_TRUE(gbk);
    EXPECT_EQ(*gbk, "\xe4\xb8\xad\xe6\x96\x87");
    auto latin1 = text::transcode_to_utf8("caf\xe9", "iso-8859-1");
    ASSERT_TRUE(latin1);
    EXPECT_EQ(*latin1, "caf\xc3\xa9");
    EXPECT_FALSE(text::transcode_to_utf8("x", "no-such-charset-zz"));
}

TEST(Text, CharacterClasses) {
    EXPECT_TRUE(text::is_punctuation(U'!'));
    EXPECT_TRUE(text::is_symbol(U'$'));
    EXPECT_TRUE(text::is_emoji(U'\U0001F600'));
    EXPECT_TRUE(text::is_unspaced_script(U'中'));
    EXPECT_TRUE(text::is_unspaced_script(U'ก'));
    EXPECT_FALSE(text::is_unspaced_script(U'a'));
}

TEST(Time, RoundTrip) {
    auto ts = parse_utc("2024-02-29T12:34:56.789Z");
    EXPECT_EQ(format_utc(ts), "2024-02-29T12:34:56.789Z");
    EXPECT_EQ(parse_utc("2024-01-01 00:00:00"), parse_utc("2024-01-01T00:00:00Z"));
    EXPECT_THROW(parse_utc("yesterday"), ConfigError);
}

TEST(Time, DaysBetween) {
    EXPECT_DOUBLE_EQ(days_between(parse_utc("2024-01-01T00:00:00Z"), parse_utc("2024-05-10T12:00:00Z")), 130.5);
}

TEST(Hash, Sha256KnownVector) {
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
}

TEST(Jsonl, RoundTripAndSchemaErrors) {
    test::TempDir dir;
    auto path = dir / "a.jsonl";
    write_jsonl_atomic(path, {Json{{"a", 1}}, Json{{"b", "x"}}});
    auto back = read_jsonl(path);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[1]["b"], "x");

    std::ofstream(dir / "bad.jsonl") << "{\"ok\":1}\n\nnot json\n";
    try {
        read_jsonl(dir / "bad.jsonl");
        FAIL() << "expected SchemaError";
    } catch (const SchemaError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
}

TEST(Jsonl, AppenderAppends) {
    test::TempDir dir;
    {
        JsonlAppender app(dir / "log.jsonl");
        app.append(Json{{"n", 1}});
    }
    {
        JsonlAppender app(dir / "log.jsonl");
        app.append(Json{{"n", 2}});
    }
    auto rows = read_jsonl(dir / "log.jsonl");
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1]["n"], 2);
}

TEST(Jsonl, FieldReaderNamesFileAndLine) {
    Json j{{"x", "str"}};
    std::string file = "f.jsonl";
    FieldReader r{j, file, 7};
    EXPECT_EQ(r.string("x"), "str");
    try {
        r.integer("x");
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("f.jsonl:7"), std::string::npos);
    }
    EXPECT_THROW(r.require("missing"), SchemaError);
}

TEST(Log, RedactRemovesEverySecretOccurrence) {
    EXPECT_EQ(redact("key=abc123&again=abc123", "abc123"), "key=***&again=***");
    EXPECT_EQ(redact("nothing here", ""), "nothing here");
}

TEST(ExitCodes, TagRoundTrip) {
    EXPECT_EQ(transport_tag(exit_code::dns), "dns");
    EXPECT_EQ(exit_code_for_tag("reset"), exit_code::reset);
    EXPECT_EQ(exit_code_for_tag("timeout"), 28);
    EXPECT_EQ(exit_code_for_tag("bogus"), 0);
}

TEST(Parallel, CoversEveryIndexOnce) {
    std::vector<std::atomic<int>> seen(500);
    parallel_for(seen.size(), 8, [&](std::size_t i) { seen[i]++; });
    for (auto& s : seen) {
        EXPECT_EQ(s.load(), 1);
    }
}

TEST(Parallel, RethrowsFirstError) {
    EXPECT_THROW(parallel_for(100, 4, [](std::size_t i) {
                     if (i == 37) {
                         throw ClientError("boom");
                     }
                 }),
                 ClientError);
}

TEST(RateLimiter, SleepsWhenBucketEmpty) {
    using Clock = RateLimiter::Clock;
    Clock::time_point now{};
    Clock::duration slept{};
    RateLimiter lim(
        2.0, 1.0, [&] { return now; },
        [&](Clock::duration d) {
            slept += d;
            now += d;
        });
    lim.acquire();
    EXPECT_EQ(slept, Clock::duration::zero());
    lim.acquire();
    EXPECT_NEAR(std::chrono::duration<double>(slept).count(), 0.5, 1e-6);
    EXPECT_FALSE(lim.try_acquire());
    now += std::chrono::seconds(1);
    EXPECT_TRUE(lim.try_acquire());
}
