// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails. Expected values come from oracles written here, separately
// from the library code under test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "probegen/aggregate/summary.hpp"
#include "probegen/analyze/domains.hpp"
#include "probegen/analyze/ooni.hpp"
#include "probegen/analyze/psl.hpp"
#include "probegen/analyze/suspected.hpp"
#include "probegen/common/jsonl.hpp"
#include "probegen/common/log.hpp"
#include "probegen/common/rng.hpp"
#include "probegen/common/time.hpp"
#include "probegen/crawl/fixture_search.hpp"
#include "probegen/crawl/search.hpp"
#include "probegen/crawl/url_clean.hpp"
#include "probegen/ingest/content_free.hpp"
#include "probegen/ingest/sanitize.hpp"
#include "probegen/querygen/sampler.hpp"
#include "probegen/querygen/tiers.hpp"
#include "probegen/simnet/scenario.hpp"
#include "probegen/simnet/simulator.hpp"
#include "probegen/topics/lda.hpp"
#include "probegen/topics/tfidf.hpp"

using namespace probegen;
namespace fs = std::filesystem;

namespace {

fs::path test_data(const std::string& rel) { return fs::path(PROBEGEN_TEST_DATA_DIR) / rel; }
fs::path fixture(const std::string& rel) { return fs::path(PROBEGEN_FIXTURE_DIR) / rel; }

// Collects the first few failed expectations of one criterion.
class Check {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok) {
            if (failures_.size() < 3) {
                failures_.push_back(what);
            }
            ++failed_;
        }
    }
    void note(std::string s) { notes_.push_back(std::move(s)); }

    bool ok() const { return failed_ == 0; }
    std::string detail() const {
        std::ostringstream out;
        if (!ok()) {
            out << failed_ << " of " << checks_ << " checks failed: ";
            for (std::size_t i = 0; i < failures_.size(); ++i) {
                out << (i ? "; " : "") << failures_[i];
            }
            return out.str();
        }
        out << checks_ << " checks";
        for (const auto& n : notes_) {
            out << ", " << n;
        }
        return out.str();
    }

private:
    int checks_ = 0;
    int failed_ = 0;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int prec = 3) {
    std::ostringstream s;
    s.precision(prec);
    s << std::fixed << v;
    return s.str();
}

// ---------------------------------------------------------------- sanitizer

void sanitizer_tables(Check& c) {
    auto t0 = std::chrono::steady_clock::now();
    const std::set<int> tolerated{403, 404, 405, 406, 408, 412, 414, 415, 423, 429,
                                  500, 501, 502, 503, 504, 505, 508, 511, 520, 591};
    ingest::SanitizeConfig cfg;
    int dead = 0;
    for (int code = 400; code <= 599; ++code) {
        ingest::PageSnapshot snap;
        snap.url = snap.final_url = "https://example.org/page";
        snap.status = ingest::HttpCode{code};
        snap.set_body(std::string(400, 'a'));
        auto v = ingest::classify_dead(snap, {}, cfg);
        bool expect_dead = !tolerated.contains(code);
        auto expect_verdict = code < 500 ? ingest::Verdict::dead_4xx : ingest::Verdict::dead_5xx;
        bool is_dead = v.verdict != ingest::Verdict::live;
        dead += is_dead;
        c.expect(is_dead == expect_dead, "HTTP " + std::to_string(code) + " verdict " + std::string(to_string(v.verdict)));
        if (expect_dead) {
            c.expect(v.verdict == expect_verdict, "HTTP " + std::to_string(code) + " wrong dead class");
        }
    }
    c.note(std::to_string(dead) + "/200 codes dead");

    c.expect(ingest::filter_min_length(std::string(300, 'x')), "300 ASCII chars dropped");
    c.expect(!ingest::filter_min_length(std::string(299, 'x')), "299 ASCII chars kept");
    std::string e300, e299;
    for (int i = 0; i < 300; ++i) {
        e300 += "\xc3\xa9";  // U+00E9, two bytes each
    }
    e299 = e300.substr(2);
    c.expect(ingest::filter_min_length(e300), "300 two-byte chars dropped");
    c.expect(!ingest::filter_min_length(e299), "299 two-byte chars kept");

    ingest::ContentFreeRules no_rules;
    for (std::size_t n : {299u, 300u}) {
        ingest::PageSnapshot snap;
        snap.url = snap.final_url = "https://example.org/";
        snap.status = ingest::HttpCode{200};
        snap.set_body(std::string(n, 'b'));
        auto v = ingest::sanitize(snap, {}, no_rules, cfg);
        c.expect((v.verdict == ingest::Verdict::live) == (n == 300), "full chain at " + std::to_string(n) + " chars");
    }
    double s = seconds_since(t0);
    c.expect(s < 1.0, "runtime " + fmt(s) + " s");
    c.note(fmt(s) + " s");
}

// ------------------------------------------------------------------ TF-IDF

nlp::EnglishBag bag(std::string url, std::map<std::string, int> counts) { return {std::move(url), std::move(counts)}; }

void tfidf_oracle(Check& c) {
    const std::map<int, std::vector<nlp::EnglishBag>> docs{
        {0, {bag("d0", {{"vpn", 4}, {"proxy", 2}, {"server", 1}}),
             bag("d1", {{"vpn", 1}, {"tunnel", 3}, {"news", 1}}),
             bag("d2", {{"proxy", 2}, {"bypass", 2}, {"free", 1}})}},
        {1, {bag("d3", {{"protest", 3}, {"activist", 2}, {"news", 2}}),
             bag("d4", {{"lawyer", 1}, {"detention", 4}, {"free", 1}}),
             bag("d5", {{"activist", 1}, {"petition", 2}, {"server", 1}})}},
        {2, {bag("d6", {{"casino", 5}, {"bonus", 1}, {"free", 2}}),
             bag("d7", {{"poker", 3}, {"casino", 1}, {"news", 1}}),
             bag("d8", {{"odds", 2}, {"betting", 2}, {"bonus", 1}})}},
    };

    // Brute force: expand every topic into a flat token list, then count by scanning.
    std::map<int, std::vector<std::string>> pseudo;
    for (const auto& [t, bags] : docs) {
        for (const auto& b : bags) {
            for (const auto& [term, n] : b.counts) {
                for (int i = 0; i < n; ++i) {
                    pseudo[t].push_back(term);
                }
            }
        }
    }
    const double N = static_cast<double>(pseudo.size());
    std::map<int, std::map<std::string, double>> expected;
    for (const auto& [t, tokens] : pseudo) {
        for (const auto& term : tokens) {
            if (expected[t].contains(term)) {
                continue;
            }
            double count = 0;
            for (const auto& x : tokens) {
                count += x == term;
            }
            double df = 0;
            for (const auto& [u, other] : pseudo) {
                df += std::find(other.begin(), other.end(), term) != other.end();
            }
            expected[t][term] = count / static_cast<double>(tokens.size()) * (std::log((1 + N) / (1 + df)) + 1);
        }
    }

    auto got = topics::tfidf_keywords(docs, 100);
    c.expect(got.size() == 3, "topic count " + std::to_string(got.size()));
    double worst = 0;
    int compared = 0;
    for (const auto& tk : got) {
        const auto& exp = expected[tk.topic_id];
        c.expect(tk.keywords.size() == exp.size(), "topic " + std::to_string(tk.topic_id) + " term count");
        for (std::size_t i = 0; i < tk.keywords.size(); ++i) {
            const auto& k = tk.keywords[i];
            auto it = exp.find(k.term);
            c.expect(it != exp.end(), "unexpected term " + k.term);
            if (it == exp.end()) {
                continue;
            }
            double err = std::abs(it->second - k.score);
            worst = std::max(worst, err);
            ++compared;
            c.expect(err <= 1e-9, k.term + " score off by " + std::to_string(err));
            if (i > 0) {
                const auto& prev = tk.keywords[i - 1];
                c.expect(prev.score > k.score || (prev.score == k.score && prev.term < k.term),
                         "ranking order at " + k.term);
            }
        }
    }
    std::ostringstream w;
    w << compared << " scores, max error " << worst;
    c.note(w.str());
}

// --------------------------------------------------------------------- LDA

void lda_recovery(Check& c) {
    Rng rng(20240);
    std::vector<nlp::EnglishBag> corpus;
    std::vector<int> truth;
    for (int d = 0; d < 200; ++d) {
        int theme = static_cast<int>(rng.below(2));
        nlp::EnglishBag b;
        b.url = "doc" + std::to_string(d);
        for (int i = 0; i < 40; ++i) {
            ++b.counts[std::string(theme == 0 ? "alpha" : "beta") + std::to_string(rng.below(50))];
        }
        corpus.push_back(std::move(b));
        truth.push_back(theme);
    }
    topics::LdaParams p{2, 0.1, 0.01, 500, 7};
    auto t0 = std::chrono::steady_clock::now();
    auto m = topics::train_lda(corpus, p);
    double s = seconds_since(t0);
    auto again = topics::train_lda(corpus, p);

    int agree = 0;
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        agree += m.training_assignment(d).topic_id == truth[d];
    }
    int best = std::max(agree, 200 - agree);  // topic labels are exchangeable
    double acc = best / 200.0;
    c.expect(acc >= 0.95, "accuracy " + fmt(acc));
    c.expect(m.to_json().dump() == again.to_json().dump(), "re-run differs");
    c.expect(s < 10.0, "runtime " + fmt(s) + " s");
    c.note("accuracy " + fmt(acc) + ", " + fmt(s) + " s");
}

// ----------------------------------------------------------- query sampler

void sampler_shares(Check& c) {
    std::vector<std::string> ranked;
    for (int i = 0; i < 40; ++i) {
        ranked.push_back("kw" + std::to_string(i));
    }
    auto tiers = querygen::tier_keywords(0, querygen::QueryMethod::lda, ranked);
    Rng rng(10000);
    std::array<double, 4> share_sum{};
    const int n = 10000;
    int bad_len = 0, bad_t1 = 0;
    for (int i = 0; i < n; ++i) {
        int size = static_cast<int>(rng.between(querygen::kMinQuerySize, querygen::kMaxQuerySize));
        auto q = querygen::sample_query(tiers, rng, size);
        int len = static_cast<int>(q.keywords.size());
        bad_len += len < 4 || len > 9;
        std::array<int, 4> hist{};
        for (const auto& k : q.keywords) {
            ++hist[static_cast<std::size_t>(k.tier - 1)];
        }
        bad_t1 += hist[0] > 3;
        for (std::size_t t = 0; t < 4; ++t) {
            share_sum[t] += static_cast<double>(hist[t]) / len;
        }
    }
    c.expect(bad_len == 0, std::to_string(bad_len) + " draws with bad length");
    c.expect(bad_t1 == 0, std::to_string(bad_t1) + " draws with tier1 > 3");
    const double lo[3] = {0.25, 0.05, 0.05}, hi[3] = {0.5, 0.4, 0.2};
    std::string shares;
    for (std::size_t t = 0; t < 3; ++t) {
        double mean = share_sum[t] / n;
        c.expect(mean >= lo[t] - 0.02 && mean <= hi[t] + 0.02, "tier " + std::to_string(t + 1) + " mean " + fmt(mean));
        shares += (t ? "/" : "") + fmt(mean);
    }
    c.note("mean shares t1/t2/t3 " + shares);
}

// ------------------------------------------------------------- crawl rules

querygen::SearchQuery make_query(std::vector<querygen::QueryKeyword> kws) {
    querygen::SearchQuery q;
    q.query_id = "acc";
    q.keywords = std::move(kws);
    return q;
}

void crawl_rules(Check& c) {
    // Spell correction: the corrected reply suggests yet another spelling,
    // which must not be followed.
    crawl::ReplaySearchClient chained;
    chained.add("vpm proxy", {{"https://a.example/"}, std::string("vpn proxy")});
    chained.add("vpn proxy", {{"https://b.example/"}, std::string("vpn proxies")});
    chained.add("vpn proxies", {{"https://c.example/"}, std::nullopt});
    auto out = crawl::search(make_query({{"vpm", 1, 0}, {"proxy", 1, 1}}), chained);
    c.expect(out.corrected, "spell correction not issued");
    c.expect(chained.calls() == 2, "chained correction made " + std::to_string(chained.calls()) + " calls");
    c.expect(out.results.size() == 2 && out.results[1].spell_corrected, "corrected results not flagged");

    // Same rule against the recorded local index.
    crawl::LocalIndexSearchClient index(fixture("search/index.jsonl"));
    crawl::ReplaySearchClient counting(&index);
    auto idx = crawl::search(make_query({{"activst", 1, 0}, {"protest", 1, 1}}), counting);
    c.expect(idx.corrected && counting.calls() == 2, "local index correction: calls " + std::to_string(counting.calls()));
    c.expect(!idx.results.empty(), "local index correction gave no results");

    // Reduction: 9 keywords, results only once the two weakest are dropped.
    std::vector<querygen::QueryKeyword> nine{{"a", 1, 0}, {"f", 3, 5}, {"b", 1, 1}, {"h", 4, 7}, {"c", 2, 2},
                                             {"i", 4, 8}, {"d", 2, 3}, {"e", 3, 4}, {"g", 4, 6}};
    crawl::ReplaySearchClient reducer;
    reducer.add("a f b c d e g", {{"https://hit.example/"}, std::nullopt});
    auto red = crawl::search(make_query(nine), reducer);
    auto req = reducer.requests();
    c.expect(req.size() == 2 && req[0] == "a f b h c i d e g" && req[1] == "a f b c d e g",
             "reduction requests differ");
    c.expect(red.reductions == 1 && red.final_keywords.size() == 7, "expected one 9->7 reduction");

    // clean_url on the 50-URL fixture (expected values frozen from a separate oracle).
    std::ifstream in(test_data("crawl/clean_url_50.jsonl"));
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        auto j = Json::parse(line);
        auto raw = j.at("raw").get<std::string>();
        auto expect = j.at("clean").get<std::string>();
        auto once = crawl::clean_url(raw);
        c.expect(once == expect, "clean_url(" + raw + ") = " + once);
        c.expect(crawl::clean_url(once) == once, "not idempotent on " + raw);
        c.expect(once.find(',') == std::string::npos, "comma survives in " + once);
        for (std::size_t p = once.find('\''); p != std::string::npos; p = once.find('\'', p + 1)) {
            c.expect(p > 0 && once[p - 1] == '\\', "unescaped quote in " + once);
        }
        ++n;
    }
    c.expect(n == 50, "fixture has " + std::to_string(n) + " URLs");
    c.note(std::to_string(n) + " URLs");
}

// ------------------------------------------------------------- consistency

std::vector<probe::FetchOutcome> runs(int ok, int fail) {
    std::vector<probe::FetchOutcome> out;
    auto start = parse_utc("2024-01-01T00:00:00Z");
    for (int i = 0; i < ok + fail; ++i) {
        bool good = i >= fail;
        out.push_back({"https://u.example/", "v", i, good ? probe::OutcomeKind::http_status : probe::OutcomeKind::transport_error,
                       good ? 200 : 6, 10, start + std::chrono::hours(72 * i)});
    }
    return out;
}

void consistency(Check& c) {
    using probe::ResponseClass;
    c.expect(aggregate::summarize(runs(48, 2)).consistent == ResponseClass::Accessible, "48/50 not consistent");
    c.expect(!aggregate::summarize(runs(47, 3)).consistent, "47/50 consistent");
    c.expect(aggregate::summarize(runs(8, 0)).consistent == ResponseClass::Accessible, "8/8 not consistent");
    c.expect(aggregate::summarize(runs(2, 48)).consistent == ResponseClass::Inaccessible, "2/50 ok not inaccessible");

    aggregate::BaselineSet base;
    base.entries = {{"acc", ResponseClass::Accessible}, {"inacc", ResponseClass::Inaccessible}, {"err", ResponseClass::Error}};
    const std::optional<ResponseClass> none;
    const ResponseClass A = ResponseClass::Accessible, I = ResponseClass::Inaccessible, E = ResponseClass::Error;
    struct Case {
        std::string url;
        std::optional<ResponseClass> vantage;
    };
    const std::vector<Case> cases{{"acc", none},   {"acc", A},   {"acc", I},     {"acc", E},
                                  {"inacc", I},    {"inacc", A}, {"err", E},     {"err", I},
                                  {"missing", none}, {"missing", A}, {"missing", I}, {"missing", E}};
    for (const auto& k : cases) {
        // The three rules, evaluated here directly.
        bool expect_diff;
        std::optional<ResponseClass> expect_base;
        auto b = base.entries.find(k.url);
        if (!k.vantage) {
            expect_diff = false;
        } else if (b == base.entries.end()) {
            expect_diff = true;
        } else {
            expect_diff = b->second != *k.vantage;
            expect_base = b->second;
        }

        aggregate::UrlRunSummary s;
        s.url = k.url;
        s.vantage_id = "x";
        s.n_runs = 50;
        s.consistent = k.vantage;
        if (k.vantage) {
            s.counts[*k.vantage] = 50;
        } else {
            s.counts[A] = 30;
            s.counts[I] = 20;
        }
        auto d = aggregate::diff(s, base);
        std::string label = k.url + "/" + (k.vantage ? std::string(probe::to_string(*k.vantage)) : "inconsistent");
        c.expect(d.has_value() == expect_diff, label + " diff presence");
        if (d && expect_diff) {
            c.expect(d->cls == *k.vantage && d->baseline_class == expect_base, label + " diff content");
        }
    }
    c.note("12-case diff table");
}

// ----------------------------------------------------------------- Jaccard

void jaccard(Check& c) {
    using analyze::DomainSet;
    DomainSet xyz{{"x"}, {"y"}, {"z"}}, yzw{{"y"}, {"z"}, {"w"}}, q{{"q"}};
    c.expect(analyze::jaccard(xyz, xyz).value == 1.0, "equal sets");
    c.expect(analyze::jaccard(xyz, q).value == 0.0, "disjoint sets");
    c.expect(std::abs(analyze::jaccard(xyz, yzw).value - 0.5) < 1e-12, "{x,y,z}/{y,z,w}");
    std::map<std::string, DomainSet> sets{{"bj", xyz}, {"sh", yzw}, {"gz", q}, {"cd", {}}};
    auto m = analyze::jaccard_matrix(sets);
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        for (std::size_t j = 0; j < m.labels.size(); ++j) {
            c.expect(m.cells[i][j].value == m.cells[j][i].value, "matrix asymmetric at " + m.labels[i] + "," + m.labels[j]);
        }
    }
    // The rendered rows must mirror the rendered columns.
    std::istringstream tsv(analyze::render_matrix_tsv(m));
    std::vector<std::vector<std::string>> grid;
    std::string row;
    while (std::getline(tsv, row)) {
        std::vector<std::string> cells;
        std::istringstream r(row);
        std::string cell;
        while (std::getline(r, cell, '\t')) {
            cells.push_back(cell);
        }
        grid.push_back(cells);
    }
    c.expect(grid.size() == m.labels.size() + 1, "rendered row count");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        for (std::size_t j = 1; j < grid[i].size() && j < grid.size(); ++j) {
            c.expect(grid[i][j] == grid[j][i], "rendered matrix asymmetric");
        }
    }
}

// ------------------------------------------------------- simnet end to end

void simnet_end_to_end(Check& c) {
    auto t0 = std::chrono::steady_clock::now();
    auto scenario = simnet::load_scenario(fixture("simnet/acceptance_scenario.json"));
    c.expect(scenario.domains.size() == 20, "scenario has " + std::to_string(scenario.domains.size()) + " domains");
    c.expect(scenario.n_runs == 50, "scenario runs");

    std::vector<probe::FetchOutcome> outcomes;
    std::vector<analyze::OoniRecord> ooni;
    for (const auto& v : scenario.vantages) {
        for (const auto& url : scenario.urls()) {
            for (int r = 0; r < scenario.n_runs; ++r) {
                outcomes.push_back(simnet::simulate_fetch(scenario, url, v, r));
            }
            ooni.push_back(simnet::simulate_ooni(scenario, url, v));
        }
    }
    auto summaries = aggregate::summarize_all(outcomes, {0.95, false});
    auto baseline = aggregate::build_baseline(summaries, scenario.baseline_vantages);
    auto diffs = aggregate::diff_all(summaries, baseline, scenario.baseline_vantages);
    auto psl = analyze::PublicSuffixList::load_default();
    auto suspected = analyze::suspected_blocked(diffs, summaries, ooni, psl, {120});
    auto disagreements = analyze::disagreement_report(summaries, ooni, psl);

    const std::set<std::string> truly_blocked{"site00.com", "site01.com", "site02.com", "site03.com",
                                              "site04.com", "site05.com", "site06.com"};
    const std::set<std::string> bots{"site10.com", "site11.com"};
    std::set<std::string> flagged;
    for (const auto& s : suspected) {
        flagged.insert(s.domain.pld);
    }
    std::set<std::string> disagreeing;
    for (const auto& d : disagreements) {
        disagreeing.insert(d.domain);
    }
    int fp = 0, fn = 0;
    for (const auto& d : flagged) {
        fp += !truly_blocked.contains(d);
    }
    for (const auto& d : truly_blocked) {
        fn += !flagged.contains(d);
    }
    auto truth = simnet::blocked_domains(scenario);
    c.expect(std::set<std::string>(truth.begin(), truth.end()) == truly_blocked, "scenario truth differs");
    c.expect(fp == 0, std::to_string(fp) + " false positives");
    c.expect(fn == 0, std::to_string(fn) + " false negatives");
    for (const auto& b : bots) {
        c.expect(disagreeing.contains(b), b + " missing from disagreements");
        c.expect(!flagged.contains(b), b + " flagged as blocked");
    }
    for (const auto& d : disagreeing) {
        c.expect(bots.contains(d), d + " unexpectedly in disagreements");
    }
    double s = seconds_since(t0);
    c.expect(s < 60.0, "runtime " + fmt(s) + " s");
    c.note(std::to_string(flagged.size()) + " suspected, " + std::to_string(disagreeing.size()) +
           " disagreeing domains, " + fmt(s) + " s");
}

// --------------------------------------------------------------------- PSL

void psl_vectors(Check& c) {
    auto psl = analyze::PublicSuffixList::load_default();
    std::ifstream in(test_data("psl/test_psl.txt"));
    c.expect(static_cast<bool>(in), "test vectors missing");
    const std::regex call(R"(checkPublicSuffix\((null|'[^']*'), (null|'[^']*')\);)");
    std::string line;
    int n = 0, wildcard = 0, exception = 0;
    while (std::getline(in, line)) {
        if (line.rfind("//", 0) == 0) {
            continue;
        }
        std::smatch m;
        if (!std::regex_search(line, m, call) || m[1] == "null") {
            continue;  // a null host has no C++ counterpart
        }
        std::string host = m[1].str().substr(1, m[1].length() - 2);
        std::optional<std::string> expect;
        if (m[2] != "null") {
            expect = m[2].str().substr(1, m[2].length() - 2);
        }
        std::optional<std::string> got;
        try {
            got = psl.registrable_domain(host);
        } catch (const analyze::NoRegistrableDomain&) {
        }
        c.expect(got == expect, host + " -> " + got.value_or("null") + ", want " + expect.value_or("null"));
        wildcard += host.ends_with(".ck") || host.ends_with(".kawasaki.jp") || host.ends_with(".mm");
        exception += host.ends_with("www.ck") || host.ends_with("city.kawasaki.jp");
        ++n;
    }
    c.expect(n > 70, "only " + std::to_string(n) + " vectors read");
    c.expect(wildcard > 0 && exception > 0, "wildcard or exception vectors missing");
    c.note(std::to_string(n) + " vectors");
}

}  // namespace

int main() {
    set_log_level("error");
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"sanitizer code tables and length boundary", sanitizer_tables},
        {"TF-IDF matches brute-force oracle", tfidf_oracle},
        {"LDA recovers two synthetic topics", lda_recovery},
        {"query sampler lengths, tier-1 cap and tier shares", sampler_shares},
        {"crawl spell-correction, reduction and URL cleaning", crawl_rules},
        {"consistency threshold and baseline diff table", consistency},
        {"Jaccard values and symmetric matrix", jaccard},
        {"simnet end-to-end blocking detection", simnet_end_to_end},
        {"public-suffix test vectors", psl_vectors},
    };
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Check c;
        try {
            fn(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.ok() ? "PASS " : "FAIL ") << name << " (" << c.detail() << ")" << std::endl;
        failed += !c.ok();
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed"
              << std::endl;
    return failed == 0 ? 0 : 1;
}
