#include <gtest/gtest.h>

#include <fstream>

#include "probegen/common/error.hpp"
#include "probegen/common/paths.hpp"
#include "probegen/ingest/content_free.hpp"
#include "probegen/ingest/errors.hpp"
#include "probegen/ingest/html_extract.hpp"
#include "probegen/ingest/page_source.hpp"
#include "probegen/ingest/sanitize.hpp"
#include "probegen/ingest/source_list.hpp"
#include "test_support.hpp"

using namespace probegen;
using namespace probegen::ingest;

namespace {

PageSnapshot snapshot(int code, std::size_t chars = 400) {
    PageSnapshot s;
    s.url = s.final_url = "https://example.org/";
    s.status = HttpCode{code};
    s.set_body(std::string(chars, 'x'));
    return s;
}

SanitizeConfig shipped_config() {
    SanitizeConfig c;
    c.seller_domains = load_domain_list(data_dir() / "domains" / "sellers.txt");
    c.suspicious_domains = load_domain_list(data_dir() / "domains" / "suspicious.txt");
    return c;
}

}  // namespace

TEST(SourceLists, DedupKeepsFirstAndCountsRows) {
    test::TempDir dir;
    std::ofstream(dir / "first.txt") << "# comment\n"
                                        "https://a.example/\tlistA\tblackpink\n"
                                        "\n"
                                        "https://b.example/\n"
                                        "not a url\n";
    std::ofstream(dir / "second.txt") << "https://a.example/\tlistB\tcitizenlab\n"
                                         "https://c.example/x\tlistB\tcitizenlab\n";
    std::vector<std::filesystem::path> paths{dir / "first.txt", dir / "second.txt"};
    auto r = load_source_lists(paths);
    ASSERT_EQ(r.entries.size(), 3u);
    EXPECT_EQ(r.raw_rows, 5u);
    EXPECT_EQ(r.duplicates, 1u);
    EXPECT_EQ(r.malformed, 1u);
    EXPECT_EQ(r.entries[0].list_name, "listA");
    EXPECT_EQ(r.entries[0].group, SourceGroup::blackpink);
    EXPECT_EQ(r.entries[1].list_name, "first");
    EXPECT_EQ(r.entries[1].group, SourceGroup::other);
    EXPECT_EQ(r.entries[2].group, SourceGroup::citizenlab);
}

TEST(SourceLists, EmptyOrMissingIsAnError) {
    test::TempDir dir;
    std::ofstream(dir / "empty.txt") << "# nothing\n";
    std::vector<std::filesystem::path> empty{dir / "empty.txt"};
    EXPECT_THROW(load_source_lists(empty), IngestError);
    std::vector<std::filesystem::path> missing{dir / "nope.txt"};
    EXPECT_THROW(load_source_lists(missing), IngestError);
}

TEST(Sanitize, ToleratedCodesStayLive) {
    auto c = shipped_config();
    for (int code : kTolerated4xx) {
        EXPECT_EQ(classify_dead(snapshot(code), {}, c).verdict, Verdict::live) << code;
    }
    for (int code : kTolerated5xx) {
        EXPECT_EQ(classify_dead(snapshot(code), {}, c).verdict, Verdict::live) << code;
    }
    EXPECT_EQ(classify_dead(snapshot(410), {}, c).verdict, Verdict::dead_4xx);
    EXPECT_EQ(classify_dead(snapshot(530), {}, c).verdict, Verdict::dead_5xx);
    EXPECT_EQ(classify_dead(snapshot(301), {}, c).verdict, Verdict::live);
}

TEST(Sanitize, RedirectRules) {
    auto c = shipped_config();
    RedirectChain seller{{"https://www.sedo.com/search?d=x"}, false};
    EXPECT_EQ(classify_dead(snapshot(200), seller, c).verdict, Verdict::dead_redirect);
    RedirectChain suspicious{{"http://searchvity.com/?q=1"}, false};
    EXPECT_EQ(classify_dead(snapshot(200), suspicious, c).verdict, Verdict::dead_redirect);
    RedirectChain loop{{"https://a.example/", "https://b.example/"}, true};
    EXPECT_EQ(classify_dead(snapshot(200), loop, c).verdict, Verdict::dead_redirect);
    RedirectChain fine{{"https://www.example.org/"}, false};
    EXPECT_EQ(classify_dead(snapshot(200), fine, c).verdict, Verdict::live);

    RedirectChain many;
    for (int i = 0; i <= c.max_redirects; ++i) {
        many.hops.push_back("https://example.org/" + std::to_string(i));
    }
    auto v = classify_dead(snapshot(200), many, c);
    EXPECT_EQ(v.verdict, Verdict::dead_redirect);
    EXPECT_NE(v.reason.find("excessive"), std::string::npos);
}

TEST(Sanitize, RedirectBeatsStatus) {
    auto c = shipped_config();
    RedirectChain seller{{"https://sedo.com/"}, false};
    EXPECT_EQ(classify_dead(snapshot(410), seller, c).verdict, Verdict::dead_redirect);
}

TEST(Sanitize, LengthBoundaryCountsScalars) {
    EXPECT_TRUE(filter_min_length(std::string(300, 'a')));
    EXPECT_FALSE(filter_min_length(std::string(299, 'a')));
    std::string accented;
    for (int i = 0; i < 300; ++i) {
        accented += "\xc3\xa9";
    }
    EXPECT_TRUE(filter_min_length(accented));  // 600 bytes, 300 scalars
    EXPECT_FALSE(filter_min_length(accented.substr(2)));
}

TEST(Sanitize, FullChainOrder) {
    auto c = shipped_config();
    auto rules = ContentFreeRules::load_dir(data_dir() / "patterns");
    auto parked = snapshot(200);
    parked.set_body("This domain is for sale! " + std::string(400, 'x'));
    EXPECT_EQ(sanitize(parked, {}, rules, c).verdict, Verdict::content_free);

    auto short_parked = snapshot(200);
    short_parked.set_body("Buy this domain");
    EXPECT_EQ(sanitize(short_parked, {}, rules, c).verdict, Verdict::content_free);

    auto dead_parked = snapshot(410);
    dead_parked.set_body("Buy this domain");
    EXPECT_EQ(sanitize(dead_parked, {}, rules, c).verdict, Verdict::dead_4xx);

    auto tiny = snapshot(200, 50);
    auto v = sanitize(tiny, {}, rules, c);
    EXPECT_EQ(v.verdict, Verdict::too_short);
    EXPECT_NE(v.reason.find("50 chars"), std::string::npos);

    EXPECT_EQ(sanitize(snapshot(200), {}, rules, c).verdict, Verdict::live);
}

TEST(ContentFree, ShippedPatternsCompileAndMatch) {
    auto rules = ContentFreeRules::load_dir(data_dir() / "patterns");
    EXPECT_GT(rules.size(), 20u);
    EXPECT_TRUE(detect_content_free("Sorry. THIS VIDEO HAS BEEN REMOVED by the user.", "https://v.example/1", rules));
    EXPECT_TRUE(detect_content_free("Welcome to nginx!", "https://a.example/", rules));
    EXPECT_TRUE(detect_content_free("plenty of text", "https://ww1.sedoparking.com/abc", rules));
    EXPECT_FALSE(detect_content_free("A long article about press freedom and the courts.", "https://a.example/", rules));
    auto hit = rules.match("This domain is parked free of charge", "https://a.example/");
    ASSERT_TRUE(hit);
    EXPECT_EQ(hit->pattern_class, "parked");
}

TEST(ContentFree, BadPatternNamesFileAndLine) {
    test::TempDir dir;
    std::ofstream(dir / "broken.txt") << "# c\nok\n(unclosed\n";
    try {
        ContentFreeRules::load_dir(dir.path());
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("broken.txt:3"), std::string::npos) << e.what();
    }
}

TEST(HtmlExtract, KeepsArticleDropsChrome) {
    const std::string html = R"(<html><head><title>T</title><script>var x = "hidden";</script>
<style>.a{color:red}</style></head><body>
<header><nav><ul><li><a href="/">Home</a></li><li><a href="/news">News</a></li></ul></nav></header>
<div class="sidebar social-share"><a href="#">Share on Facebook</a></div>
<article><h1>Court upholds   verdict</h1><p>The tribunal &amp; the lawyers met on Monday.</p>
<p>Caf&eacute; owners &#233;&#xE9; protested.</p></article>
<form><input name="q"><button>Search</button></form>
<footer>Copyright 2024</footer></body></html>)";
    auto text = extract_main_text(html);
    EXPECT_NE(text.find("Court upholds verdict"), std::string::npos) << text;
    EXPECT_NE(text.find("The tribunal & the lawyers met on Monday."), std::string::npos);
    EXPECT_NE(text.find("Caf\xc3\xa9 owners \xc3\xa9\xc3\xa9 protested."), std::string::npos);
    EXPECT_EQ(text.find("hidden"), std::string::npos);
    EXPECT_EQ(text.find("Home"), std::string::npos);
    EXPECT_EQ(text.find("Facebook"), std::string::npos);
    EXPECT_EQ(text.find("Copyright"), std::string::npos);
    EXPECT_EQ(text.find("Search"), std::string::npos);
}

TEST(HtmlExtract, WithoutArticleUsesBody) {
    auto text = extract_main_text("<html><body><div><p>First paragraph.</p><p>Second one.</p></div></body></html>");
    EXPECT_EQ(text, "First paragraph.\nSecond one.");
}

TEST(HtmlExtract, DropsLinkLists) {
    std::string html = "<body><div><p>Real content sentence here.</p></div><div>";
    for (int i = 0; i < 10; ++i) {
        html += "<a href=\"/x" + std::to_string(i) + "\">link " + std::to_string(i) + "</a> ";
    }
    html += "</div></body>";
    auto text = extract_main_text(html);
    EXPECT_NE(text.find("Real content"), std::string::npos);
    EXPECT_EQ(text.find("link 3"), std::string::npos) << text;
}

TEST(HtmlExtract, CharsetSources) {
    EXPECT_EQ(charset_from_content_type("text/html; charset=GBK"), "gbk");
    EXPECT_EQ(charset_from_content_type("text/html"), std::nullopt);
    EXPECT_EQ(charset_from_meta("<meta charset=\"windows-1251\">"), "windows-1251");
    EXPECT_EQ(charset_from_meta("<meta http-equiv=\"Content-Type\" content=\"text/html; charset=Shift_JIS\">"),
              "shift_jis");

    std::string gbk_page = "<html><head><meta charset=\"gbk\"></head><body><p>\xd6\xd0\xce\xc4</p></body></html>";
    EXPECT_EQ(extract_main_text(gbk_page), "\xe4\xb8\xad\xe6\x96\x87");
    // The header wins over the meta tag.
    std::string latin = "<html><head><meta charset=\"utf-8\"></head><body><p>caf\xe9</p></body></html>";
    EXPECT_EQ(extract_main_text(latin, "text/html; charset=iso-8859-1"), "caf\xc3\xa9");
}

TEST(HtmlExtract, BinaryAndEmpty) {
    EXPECT_EQ(decode_document(std::string("\x89PNG\0\0\0", 7)), std::nullopt);
    EXPECT_EQ(extract_main_text(std::string("\x89PNG\0\0\0", 7)), "");
    EXPECT_EQ(extract_main_text(""), "");
    auto bom = decode_document("\xef\xbb\xbfhello");
    ASSERT_TRUE(bom);
    EXPECT_EQ(*bom, "hello");
}

TEST(HtmlExtract, Entities) {
    EXPECT_EQ(decode_entities("a &lt;b&gt; &quot;c&quot; &#x4E2D; &nbsp;x &bogus;"),
              "a <b> \"c\" \xe4\xb8\xad \xc2\xa0x &bogus;");
}

TEST(FixtureStore, ServesRecordedPages) {
    FixturePageStore store(test::fixture("pages"));
    EXPECT_GT(store.size(), 30u);
    auto live = store.fetch("https://www.rightswatch.org/");
    ASSERT_TRUE(std::holds_alternative<HttpCode>(live.snapshot.status));
    EXPECT_EQ(std::get<HttpCode>(live.snapshot.status).code, 200);
    EXPECT_GE(live.snapshot.char_count, 300u);

    auto gone = store.fetch("https://gone-forever.net/");
    ASSERT_TRUE(std::holds_alternative<TransportFailure>(gone.snapshot.status));
    EXPECT_EQ(std::get<TransportFailure>(gone.snapshot.status).tag, "dns");

    auto parked = store.fetch("https://forsale-domain.com/");
    EXPECT_EQ(parked.redirects.hops.size(), 1u);

    auto unknown = store.fetch("https://never-recorded.example/");
    EXPECT_TRUE(std::holds_alternative<TransportFailure>(unknown.snapshot.status));
}

TEST(FixtureStore, FetchAllKeepsOrder) {
    FixturePageStore store(test::fixture("pages"));
    std::vector<SourceEntry> entries{{"https://brokenhost.info/", "l", SourceGroup::other},
                                     {"https://www.rightswatch.org/", "l", SourceGroup::other},
                                     {"https://oldnews-archive.net/story/4411", "l", SourceGroup::other}};
    auto pages = fetch_all(entries, store, 3);
    ASSERT_EQ(pages.size(), 3u);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        EXPECT_EQ(pages[i].snapshot.url, entries[i].url);
    }
}

TEST(FixtureStore, MalformedIndexIsSchemaError) {
    test::TempDir dir;
    std::ofstream(dir / "index.jsonl") << "{\"url\":\"https://a.example/\"}\n";
    EXPECT_THROW(FixturePageStore{dir.path()}, SchemaError);
    test::TempDir empty;
    EXPECT_THROW(FixturePageStore{empty.path()}, IngestError);
}
