#include "probegen/cli/stages.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>

#include "probegen/aggregate/summary.hpp"
#include "probegen/analyze/domains.hpp"
#include "probegen/analyze/ooni.hpp"
#include "probegen/analyze/psl.hpp"
#include "probegen/analyze/suspected.hpp"
#include "probegen/analyze/tabulate.hpp"
#include "probegen/cli/manifest.hpp"
#include "probegen/common/error.hpp"
#include "probegen/common/hash.hpp"
#include "probegen/common/log.hpp"
#include "probegen/common/parallel.hpp"
#include "probegen/common/paths.hpp"
#include "probegen/common/rate_limiter.hpp"
#include "probegen/common/rng.hpp"
#include "probegen/common/time.hpp"
#include "probegen/crawl/campaign.hpp"
#include "probegen/crawl/fixture_search.hpp"
#include "probegen/expand/expand.hpp"
#include "probegen/http/clients.hpp"
#include "probegen/ingest/content_free.hpp"
#include "probegen/ingest/page_source.hpp"
#include "probegen/ingest/sanitize.hpp"
#include "probegen/ingest/source_list.hpp"
#include "probegen/nlp/embed_clean.hpp"
#include "probegen/nlp/language.hpp"
#include "probegen/nlp/tokenize.hpp"
#include "probegen/nlp/translate.hpp"
#include "probegen/probe/campaign.hpp"
#include "probegen/probe/transport.hpp"
#include "probegen/querygen/sampler.hpp"
#include "probegen/querygen/tiers.hpp"
#include "probegen/simnet/simulator.hpp"
#include "probegen/topics/exchange.hpp"
#include "probegen/topics/lda.hpp"
#include "probegen/topics/tfidf.hpp"

namespace probegen::cli {

namespace {

struct Ctx {
    const RunConfig& config;
    const StageOptions& options;
    std::vector<std::string>& secrets;
    fs::path out;  // this stage's directory

    fs::path stage_dir(const std::string& s) const { return config.run_dir / s; }

    std::string secret(const ClientConfig& c, const char* key, const std::string& fallback_var) {
        auto value = http::env_secret(c.text(key, fallback_var));
        secrets.push_back(value);
        return value;
    }

    void require_real(const std::string& what) const {
        if (!options.allow_real) {
            throw ConfigError(what + " is configured for real mode; pass --allow-real to use it");
        }
    }
};

struct Stage {
    std::string name;
    std::function<std::vector<std::string>(const RunConfig&)> requires_;
    std::function<std::vector<fs::path>(const Ctx&)> extra_inputs;
    std::function<StageRun(Ctx&)> run;
    bool resumable = false;  // keep partial output of an interrupted run
};

void write_json(const fs::path& p, const Json& j) { write_file_atomic(p, j.dump(2) + "\n"); }

template <typename T>
void write_records(const fs::path& p, const std::vector<T>& items) {
    std::vector<Json> recs;
    recs.reserve(items.size());
    for (const auto& x : items) {
        recs.push_back(to_json(x));
    }
    write_jsonl_atomic(p, recs);
}

fs::path existing(const fs::path& p, const std::string& what) {
    if (p.empty()) {
        throw ConfigError(what + " is not configured");
    }
    if (!fs::exists(p)) {
        throw ConfigError(what + " not found: " + p.string());
    }
    return p;
}

// Baseline vantages first, then the rest in config order.
std::vector<std::string> ordered_vantages(const std::vector<std::string>& all, const std::vector<std::string>& base) {
    std::vector<std::string> out = base;
    for (const auto& v : all) {
        if (std::find(base.begin(), base.end(), v) == base.end()) {
            out.push_back(v);
        }
    }
    return out;
}

// ---------------------------------------------------------------- sanitize

StageRun sanitize_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    if (c.source_lists.empty()) {
        throw ConfigError("inputs.source_lists is empty");
    }
    auto report = ingest::load_source_lists(c.source_lists);

    std::unique_ptr<ingest::PageSource> source;
    if (!c.pages.empty()) {
        source = std::make_unique<ingest::FixturePageStore>(existing(c.pages, "inputs.pages"));
    } else {
        ctx.require_real("page fetching (inputs.pages unset)");
        ingest::CurlFetchOptions fo;
        fo.timeout_s = c.thresholds.timeout_s;
        if (!c.probe.user_agent.empty()) {
            fo.user_agent = c.probe.user_agent;
        }
        source = std::make_unique<ingest::CurlPageFetcher>(fo);
    }
    auto pages = ingest::fetch_all(report.entries, *source, c.parallelism);

    auto rules = ingest::ContentFreeRules::load_dir(c.content_patterns);
    ingest::SanitizeConfig sc;
    sc.min_chars = c.thresholds.min_chars;
    sc.seller_domains = ingest::load_domain_list(data_dir() / "domains" / "sellers.txt");
    sc.suspicious_domains = ingest::load_domain_list(data_dir() / "domains" / "suspicious.txt");

    std::vector<Json> sources;
    std::vector<Json> verdicts;
    std::vector<Json> live;
    std::map<std::string, std::size_t> tally;
    for (std::size_t i = 0; i < pages.size(); ++i) {
        const auto& e = report.entries[i];
        const auto& p = pages[i];
        sources.push_back(Json{{"url", e.url}, {"list", e.list_name}, {"group", std::string(to_string(e.group))}});
        auto v = ingest::sanitize(p.snapshot, p.redirects, rules, sc);
        verdicts.push_back(ingest::to_json(v, p.snapshot.char_count));
        ++tally[std::string(to_string(v.verdict))];
        if (v.verdict == ingest::Verdict::live) {
            live.push_back(Json{{"url", e.url},
                                {"list", e.list_name},
                                {"group", std::string(to_string(e.group))},
                                {"text", p.snapshot.body_text}});
        }
    }
    write_jsonl_atomic(ctx.out / "sources.jsonl", sources);
    write_jsonl_atomic(ctx.out / "verdicts.jsonl", verdicts);
    write_jsonl_atomic(ctx.out / "pages.jsonl", live);
    write_json(ctx.out / "summary.json", Json{{"raw_rows", report.raw_rows},
                                              {"duplicates", report.duplicates},
                                              {"malformed", report.malformed},
                                              {"entries", report.entries.size()},
                                              {"verdicts", tally}});
    return {StageState::done, std::to_string(live.size()) + " live pages of " + std::to_string(pages.size())};
}

// --------------------------------------------------------------------- nlp

StageRun nlp_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    auto profiles = nlp::ProfileSet::load(data_dir() / "langprofiles");
    nlp::NgramProfileDetector primary(profiles, nlp::primary_languages());
    nlp::NgramProfileDetector fallback(profiles, {});
    auto stopwords = nlp::StopwordStore::load_dir(data_dir() / "stopwords");
    nlp::IcuWordSegmenter segmenter;

    const auto& tc = c.client("translation");
    std::unique_ptr<nlp::TranslationClient> client;
    if (tc.mode == "real") {
        ctx.require_real("clients.translation");
        client = std::make_unique<http::GoogleTranslateClient>(ctx.secret(tc, "key_env", "PROBEGEN_TRANSLATE_KEY"));
    } else if (auto f = tc.text("fixture"); !f.empty()) {
        client = std::make_unique<nlp::FixtureTranslationClient>(existing(f, "clients.translation.fixture"));
    } else {
        client = std::make_unique<nlp::FixtureTranslationClient>();
    }
    nlp::CachingTranslator translator(*client);

    auto pages = read_jsonl(ctx.stage_dir("sanitize") / "pages.jsonl");
    struct Out {
        std::optional<nlp::TokenizedDoc> doc;
        std::optional<nlp::EnglishBag> bag;
        Json embed;
        std::string dropped;
    };
    std::vector<Out> outs(pages.size());
    parallel_for(pages.size(), c.parallelism, [&](std::size_t i) {
        auto url = pages[i].at("url").get<std::string>();
        auto text = pages[i].at("text").get<std::string>();
        auto& o = outs[i];
        auto tag = nlp::detect_language(text, primary, fallback);
        o.embed = Json{{"url", url}, {"lang", tag.code}, {"text", nlp::clean_for_embedding(text)}};
        if (tag.detector == nlp::DetectorId::undetected) {
            o.dropped = "language undetected";
            return;
        }
        o.doc = nlp::tokenize(url, text, tag, stopwords, &segmenter);
        try {
            o.bag = nlp::translate_tokens(*o.doc, translator);
            if (o.bag->counts.empty()) {
                o.bag.reset();
                o.dropped = "no tokens";
            }
        } catch (const nlp::TranslationError& e) {
            o.dropped = e.what();
        }
    });

    std::vector<Json> docs, bags, embed, dropped;
    for (const auto& o : outs) {
        embed.push_back(o.embed);
        if (o.doc) {
            docs.push_back(to_json(*o.doc));
        }
        if (o.bag) {
            bags.push_back(to_json(*o.bag));
        } else {
            dropped.push_back(Json{{"url", o.embed["url"]}, {"reason", o.dropped}});
        }
    }
    write_jsonl_atomic(ctx.out / "docs.jsonl", docs);
    write_jsonl_atomic(ctx.out / "bags.jsonl", bags);
    write_jsonl_atomic(ctx.out / "embed_docs.jsonl", embed);
    write_jsonl_atomic(ctx.out / "dropped.jsonl", dropped);
    write_json(ctx.out / "summary.json", Json{{"pages", pages.size()},
                                              {"bags", bags.size()},
                                              {"dropped", dropped.size()},
                                              {"translation_calls", translator.client_calls()},
                                              {"translation_cache_hits", translator.cache_hits()}});
    return {StageState::done, std::to_string(bags.size()) + " English bags"};
}

// ------------------------------------------------------------------ topics

StageRun topics_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    std::vector<nlp::EnglishBag> kept;
    std::size_t discarded = 0;
    for (const auto& j : read_jsonl(ctx.stage_dir("nlp") / "bags.jsonl")) {
        if (auto b = topics::stem_and_filter(nlp::english_bag_from_json(j), c.topics.min_distinct_stems)) {
            kept.push_back(std::move(*b));
        } else {
            ++discarded;
        }
    }
    if (kept.empty()) {
        throw Error("topics: no document has enough distinct stems");
    }
    if (static_cast<std::size_t>(c.topics.K) > kept.size()) {
        log().warn("topics: K={} exceeds the {} documents", c.topics.K, kept.size());
    }
    topics::LdaParams params{c.topics.K, c.topics.alpha, c.topics.beta, c.topics.iters,
                             derive_seed(c.master_seed, std::string_view("lda"))};
    auto model = topics::train_lda(kept, params);

    std::vector<topics::TopicAssignment> assignments;
    std::map<int, std::vector<nlp::EnglishBag>> grouped;
    for (std::size_t d = 0; d < kept.size(); ++d) {
        auto a = model.training_assignment(d);
        grouped[a.topic_id].push_back(kept[d]);
        assignments.push_back(std::move(a));
    }
    auto keywords = topics::tfidf_keywords(grouped, c.topics.keywords_per_topic, topics::Method::lda);

    std::set<std::pair<topics::Method, int>> seen;
    std::size_t outliers = 0;
    for (const auto& f : c.topics.exchange_files) {
        auto ex = topics::ingest_plugin_topics(existing(f, "topics.exchange_files entry"));
        outliers += ex.outliers_dropped;
        for (auto& k : ex.keywords) {
            if (!seen.insert({k.method, k.topic_id}).second) {
                throw ConfigError("exchange files repeat " + std::string(to_string(k.method)) + " topic " +
                                  std::to_string(k.topic_id));
            }
            keywords.push_back(std::move(k));
        }
        for (auto& a : ex.assignments) {
            assignments.push_back(std::move(a));
        }
    }

    write_json(ctx.out / "lda_model.json", model.to_json());
    write_records(ctx.out / "assignments.jsonl", assignments);
    write_records(ctx.out / "keywords.jsonl", keywords);
    std::map<std::string, std::size_t> per_method;
    for (const auto& k : keywords) {
        ++per_method[std::string(to_string(k.method))];
    }
    write_json(ctx.out / "summary.json", Json{{"documents", kept.size()},
                                              {"discarded", discarded},
                                              {"occupied_topics", per_method},
                                              {"outliers_dropped", outliers}});
    return {StageState::done, std::to_string(grouped.size()) + " occupied LDA topics"};
}

std::vector<topics::TopicKeywords> load_keywords(const fs::path& p) {
    std::vector<topics::TopicKeywords> out;
    const auto file = p.string();
    for_each_jsonl(p, [&](const Json& j, std::size_t line) {
        FieldReader r{j, file, line};
        topics::TopicKeywords k;
        k.topic_id = static_cast<int>(r.integer("topic_id"));
        auto m = topics::parse_method(r.string("method"));
        if (!m) {
            r.fail("unknown method");
        }
        k.method = *m;
        for (const auto& kw : r.require("keywords")) {
            k.keywords.push_back({kw.at("term").get<std::string>(), kw.at("score").get<double>()});
        }
        out.push_back(std::move(k));
    });
    return out;
}

// ------------------------------------------------------------------ expand

StageRun expand_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    auto keywords = load_keywords(ctx.stage_dir("topics") / "keywords.jsonl");
    std::vector<const topics::TopicKeywords*> lda, top2vec;
    for (const auto& k : keywords) {
        if (k.method == topics::Method::lda) {
            lda.push_back(&k);
        } else if (k.method == topics::Method::top2vec) {
            top2vec.push_back(&k);
        }
    }

    std::unique_ptr<expand::LlmClient> llm;
    if (!lda.empty()) {
        const auto& lc = c.client("llm");
        if (lc.mode == "real") {
            ctx.require_real("clients.llm");
            llm = std::make_unique<http::OpenAiLlmClient>(ctx.secret(lc, "key_env", "OPENAI_API_KEY"),
                                                          lc.text("model", "gpt-3.5-turbo"));
        } else {
            llm = std::make_unique<expand::ReplayLlmClient>(existing(lc.text("fixture"), "clients.llm.fixture"));
        }
    }
    std::unique_ptr<expand::TrendsClient> trends;
    if (!top2vec.empty()) {
        const auto& tc = c.client("trends");
        if (tc.mode == "real") {
            ctx.require_real("clients.trends");
            trends = std::make_unique<http::WebTrendsClient>();
        } else {
            trends = std::make_unique<expand::ReplayTrendsClient>(existing(tc.text("fixture"), "clients.trends.fixture"));
        }
    }

    auto prompt = expand::PromptTemplate::load_default();
    std::vector<std::optional<expand::ExpandedKeywords>> llm_out(lda.size());
    std::vector<std::string> llm_fail(lda.size());
    parallel_for(lda.size(), c.parallelism, [&](std::size_t i) {
        std::vector<std::string> seeds;
        for (const auto& t : lda[i]->keywords) {
            seeds.push_back(t.term);
        }
        try {
            llm_out[i] = expand::llm_expand(lda[i]->topic_id, seeds, *llm, prompt, {c.llm_max_keywords, 2});
        } catch (const expand::ExpansionError& e) {
            llm_fail[i] = e.what();
        }
    });
    std::vector<expand::ExpandedKeywords> trends_out(top2vec.size());
    expand::TrendsExpandOptions to{c.trends_window, c.trends_max_keywords};
    parallel_for(top2vec.size(), c.parallelism, [&](std::size_t i) {
        trends_out[i].topic_id = top2vec[i]->topic_id;
        trends_out[i].method = expand::ExpansionMethod::top2vec_trends;
        if (auto two = expand::top_two(*top2vec[i])) {
            trends_out[i] = expand::trends_expand(top2vec[i]->topic_id, two->first, two->second, *trends, to);
        }
    });

    std::vector<Json> expanded, failures;
    for (std::size_t i = 0; i < lda.size(); ++i) {
        if (llm_out[i]) {
            expanded.push_back(to_json(*llm_out[i]));
        } else {
            failures.push_back(Json{{"method", "lda_gpt"}, {"topic_id", lda[i]->topic_id}, {"reason", llm_fail[i]}});
        }
    }
    for (const auto& e : trends_out) {
        if (e.keywords.empty()) {
            failures.push_back(Json{{"method", "top2vec_trends"}, {"topic_id", e.topic_id}, {"reason", "no related queries"}});
        } else {
            expanded.push_back(to_json(e));
        }
    }
    write_jsonl_atomic(ctx.out / "expanded.jsonl", expanded);
    write_jsonl_atomic(ctx.out / "failures.jsonl", failures);
    return {StageState::done, std::to_string(expanded.size()) + " topics expanded, " +
                                  std::to_string(failures.size()) + " without expansion"};
}

// ------------------------------------------------------------- gen-queries

StageRun gen_queries_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    auto keywords = load_keywords(ctx.stage_dir("topics") / "keywords.jsonl");
    std::map<std::pair<expand::ExpansionMethod, int>, expand::ExpandedKeywords> expansions;
    for (const auto& j : read_jsonl(ctx.stage_dir("expand") / "expanded.jsonl")) {
        auto e = expand::expanded_keywords_from_json(j);
        expansions[{e.method, e.topic_id}] = std::move(e);
    }

    auto ranked_of = [](const topics::TopicKeywords& k) {
        std::vector<std::string> out;
        for (const auto& t : k.keywords) {
            out.push_back(t.term);
        }
        return out;
    };
    // Expanded streams: the topic's own keywords by score, then expansions in
    // provider order.
    auto extend = [](std::vector<std::string> ranked, const expand::ExpandedKeywords& e) {
        std::set<std::string> have(ranked.begin(), ranked.end());
        for (const auto& t : e.terms()) {
            if (have.insert(t).second) {
                ranked.push_back(t);
            }
        }
        return ranked;
    };

    std::vector<querygen::TieredKeywords> tiers;
    for (const auto& k : keywords) {
        auto ranked = ranked_of(k);
        if (ranked.empty()) {
            continue;
        }
        switch (k.method) {
            case topics::Method::lda:
                tiers.push_back(querygen::tier_keywords(k.topic_id, querygen::QueryMethod::lda, ranked));
                if (auto it = expansions.find({expand::ExpansionMethod::lda_gpt, k.topic_id}); it != expansions.end()) {
                    tiers.push_back(querygen::tier_keywords(k.topic_id, querygen::QueryMethod::lda_gpt,
                                                            extend(ranked, it->second)));
                }
                break;
            case topics::Method::bertopic:
                tiers.push_back(querygen::tier_keywords(k.topic_id, querygen::QueryMethod::bertopic, ranked));
                break;
            case topics::Method::top2vec:
                tiers.push_back(querygen::tier_keywords(k.topic_id, querygen::QueryMethod::top2vec, ranked));
                if (auto it = expansions.find({expand::ExpansionMethod::top2vec_trends, k.topic_id});
                    it != expansions.end()) {
                    tiers.push_back(querygen::tier_keywords(k.topic_id, querygen::QueryMethod::top2vec_trends,
                                                            extend(ranked, it->second)));
                }
                break;
        }
    }
    querygen::GenerateOptions go;
    go.per_topic_budget = c.per_topic_budget;
    go.permutations = c.permutations;
    auto queries =
        querygen::generate_queries(tiers, derive_seed(c.master_seed, std::string_view("queries")), go, c.parallelism);
    write_records(ctx.out / "tiers.jsonl", tiers);
    write_records(ctx.out / "queries.jsonl", queries);
    std::map<std::string, std::size_t> per_method;
    for (const auto& q : queries) {
        ++per_method[std::string(to_string(q.method))];
    }
    write_json(ctx.out / "summary.json", Json{{"topic_streams", tiers.size()}, {"queries", per_method}});
    return {StageState::done, std::to_string(queries.size()) + " queries"};
}

std::vector<querygen::SearchQuery> load_queries(const fs::path& p) {
    std::vector<querygen::SearchQuery> out;
    for (const auto& j : read_jsonl(p)) {
        out.push_back(querygen::search_query_from_json(j));
    }
    return out;
}

// ------------------------------------------------------------------- crawl

StageRun crawl_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    auto queries = load_queries(ctx.stage_dir("gen-queries") / "queries.jsonl");

    const auto& sc = c.client("search");
    std::unique_ptr<crawl::SearchClient> base;
    std::unique_ptr<crawl::SearchClient> index;
    if (sc.mode == "real") {
        ctx.require_real("clients.search");
        auto key = ctx.secret(sc, "key_env", "PROBEGEN_SEARCH_KEY");
        auto cx = ctx.secret(sc, "engine_env", "PROBEGEN_SEARCH_ENGINE");
        base = std::make_unique<http::GoogleSearchClient>(key, cx);
    } else {
        auto replay = sc.text("replay");
        auto idx = sc.text("index");
        if (replay.empty() && idx.empty()) {
            throw ConfigError("clients.search needs a replay file or an index in fixture mode");
        }
        if (!idx.empty()) {
            index = std::make_unique<crawl::LocalIndexSearchClient>(existing(idx, "clients.search.index"));
        }
        if (!replay.empty()) {
            base = std::make_unique<crawl::ReplaySearchClient>(existing(replay, "clients.search.replay"), index.get());
        } else {
            base = std::move(index);
        }
    }
    std::optional<RateLimiter> limiter;
    std::optional<crawl::RateLimitedSearchClient> limited;
    crawl::SearchClient* client = base.get();
    if (c.search_requests_per_second > 0) {
        limiter.emplace(c.search_requests_per_second, 1.0);
        limited.emplace(*base, *limiter);
        client = &*limited;
    }

    crawl::CrawlOptions co;
    co.search.max_retries = c.search_max_retries;
    co.parallelism = c.parallelism;
    auto checkpoint = ctx.out / "records.jsonl";
    auto status = crawl::run_crawl(queries, *client, checkpoint, co);
    if (status.paused) {
        return {StageState::paused, "search quota exhausted with " + std::to_string(status.remaining) +
                                        " queries left; re-run to resume"};
    }
    auto records = crawl::load_crawl_records(queries, checkpoint);
    auto probe_list = crawl::build_probe_list(records);
    write_records(ctx.out / "probe_list.jsonl", probe_list);
    std::string txt;
    for (const auto& p : probe_list) {
        txt += p.url + "\n";
    }
    write_file_atomic(ctx.out / "probe_list.txt", txt);
    std::size_t barren = 0, calls = 0;
    for (const auto& r : records) {
        barren += r.barren ? 1 : 0;
        calls += static_cast<std::size_t>(r.client_calls);
    }
    write_json(ctx.out / "summary.json", Json{{"queries", records.size()},
                                              {"barren_queries", barren},
                                              {"search_calls", calls},
                                              {"probe_list_urls", probe_list.size()}});
    return {StageState::done, std::to_string(probe_list.size()) + " probe-list URLs"};
}

// ------------------------------------------------------- probe / simulate

struct CampaignPlan {
    std::vector<std::string> urls;
    std::vector<std::string> vantages;
    std::vector<std::string> baseline;
    int n_runs = 1;
};

bool run_sim_campaigns(Ctx& ctx, const simnet::Scenario& scenario, const CampaignPlan& plan) {
    const auto& c = ctx.config;
    fs::create_directories(ctx.out / "outcomes");
    bool paused = false;
    for (const auto& v : plan.vantages) {
        simnet::SimTransport transport(scenario, v, c.probe.user_agent);
        probe::CampaignOptions po;
        po.n_runs = plan.n_runs;
        po.parallelism = c.parallelism;
        po.seed = derive_seed(c.master_seed, std::string_view("probe"));
        po.timeout_s = c.thresholds.timeout_s;
        po.virtual_clock = true;
        po.virtual_start = scenario.start;
        po.run_interval = std::chrono::duration_cast<std::chrono::seconds>(scenario.run_interval);
        auto st = probe::run_campaign(plan.urls, v, transport, ctx.out / "outcomes" / (v + ".jsonl"), po);
        paused = paused || st.paused || !st.complete;
    }
    std::vector<Json> ooni;
    for (const auto& v : plan.vantages) {
        const auto& sv = scenario.vantage(v);
        for (const auto& u : plan.urls) {
            ooni.push_back(analyze::to_json(simnet::simulate_ooni(scenario, u, sv)));
        }
    }
    write_jsonl_atomic(ctx.out / "ooni.jsonl", ooni);
    write_json(ctx.out / "vantages.json", Json{{"vantages", plan.vantages}, {"baseline_vantages", plan.baseline}});
    return !paused;
}

StageRun probe_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    std::vector<std::string> urls;
    for (const auto& j : read_jsonl(ctx.stage_dir("crawl") / "probe_list.jsonl")) {
        urls.push_back(j.at("url").get<std::string>());
    }
    if (c.vantages.empty()) {
        throw ConfigError("probe: no vantages configured");
    }
    CampaignPlan plan{urls, c.vantage_ids(), c.baseline_vantages, c.probe.n_runs};

    if (c.probe.transport == "simnet") {
        auto scenario = simnet::load_scenario(existing(c.scenario, "inputs.scenario"));
        for (const auto& v : plan.vantages) {
            scenario.vantage(v);  // every vantage must exist in the scenario
        }
        if (!run_sim_campaigns(ctx, scenario, plan)) {
            return {StageState::paused, "campaign incomplete; re-run to resume"};
        }
        return {StageState::done, std::to_string(urls.size()) + " URLs x " + std::to_string(plan.n_runs) +
                                      " runs x " + std::to_string(plan.vantages.size()) + " simulated vantages"};
    }

    ctx.require_real("probe.transport=curl");
    fs::create_directories(ctx.out / "outcomes");
    bool paused = false;
    for (const auto& v : c.vantages) {
        probe::CurlTransportOptions to;
        if (!c.probe.user_agent.empty()) {
            to.user_agent = c.probe.user_agent;
        }
        to.proxy = v.proxy;
        probe::CurlTransport transport(to);
        probe::CampaignOptions po;
        po.n_runs = plan.n_runs;
        po.parallelism = c.parallelism;
        po.seed = derive_seed(c.master_seed, std::string_view("probe"));
        po.timeout_s = c.thresholds.timeout_s;
        po.requests_per_second = c.probe.requests_per_second;
        po.run_interval = std::chrono::seconds(static_cast<long long>(c.probe.run_interval_hours * 3600));
        auto st = probe::run_campaign(urls, v.id, transport, ctx.out / "outcomes" / (v.id + ".jsonl"), po);
        paused = paused || st.paused || !st.complete;
    }
    write_json(ctx.out / "vantages.json", Json{{"vantages", plan.vantages}, {"baseline_vantages", plan.baseline}});
    if (paused) {
        return {StageState::paused, "a vantage was unreachable; re-run to resume"};
    }
    return {StageState::done, std::to_string(urls.size()) + " URLs probed"};
}

StageRun simulate_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    auto scenario = simnet::load_scenario(existing(c.scenario, "inputs.scenario"));
    CampaignPlan plan;
    plan.urls = scenario.urls();
    for (const auto& v : scenario.vantages) {
        plan.vantages.push_back(v.id);
    }
    plan.baseline = scenario.baseline_vantages;
    plan.n_runs = scenario.n_runs;
    if (!run_sim_campaigns(ctx, scenario, plan)) {
        return {StageState::paused, "simulation incomplete; re-run to resume"};
    }
    write_json(ctx.out / "truth.json", Json{{"blocked_domains", simnet::blocked_domains(scenario)}});
    return {StageState::done, std::to_string(plan.urls.size()) + " URLs x " + std::to_string(plan.n_runs) +
                                  " runs x " + std::to_string(plan.vantages.size()) + " vantages"};
}

// --------------------------------------------------------------- aggregate

std::pair<std::vector<std::string>, std::vector<std::string>> outcome_vantages(const Ctx& ctx) {
    const auto& c = ctx.config;
    auto file = ctx.stage_dir(c.outcome_stage) / "vantages.json";
    std::vector<std::string> all = c.vantage_ids();
    std::vector<std::string> base = c.baseline_vantages;
    if (fs::exists(file)) {
        auto j = Json::parse(read_file(file));
        if (all.empty()) {
            all = j.at("vantages").get<std::vector<std::string>>();
        }
        if (base.empty()) {
            base = j.at("baseline_vantages").get<std::vector<std::string>>();
        }
    }
    if (base.empty()) {
        throw ConfigError("no baseline vantages configured");
    }
    return {ordered_vantages(all, base), base};
}

StageRun aggregate_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    auto [vantages, base] = outcome_vantages(ctx);
    std::vector<probe::FetchOutcome> outcomes;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(ctx.stage_dir(c.outcome_stage) / "outcomes")) {
        if (e.path().extension() == ".jsonl") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        auto part = probe::read_outcomes(f);
        outcomes.insert(outcomes.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    auto summaries = aggregate::summarize_all(outcomes, {c.thresholds.consistency, false});
    auto baseline = aggregate::build_baseline(summaries, base);
    auto diffs = aggregate::diff_all(summaries, baseline, base);

    write_records(ctx.out / "summaries.jsonl", summaries);
    std::vector<Json> bl;
    for (const auto& [url, cls] : baseline.entries) {
        bl.push_back(Json{{"url", url}, {"class", std::string(probe::to_string(cls))}});
    }
    write_jsonl_atomic(ctx.out / "baseline.jsonl", bl);
    write_records(ctx.out / "diffs.jsonl", diffs);
    write_json(ctx.out / "vantages.json", Json{{"vantages", vantages}, {"baseline_vantages", base}});
    write_json(ctx.out / "summary.json", Json{{"outcomes", outcomes.size()},
                                              {"summaries", summaries.size()},
                                              {"baseline_urls", baseline.entries.size()},
                                              {"diffs", diffs.size()}});
    return {StageState::done, std::to_string(diffs.size()) + " diffs from " + std::to_string(outcomes.size()) +
                                  " outcomes"};
}

// ----------------------------------------------------------------- analyze

fs::path ooni_source(const Ctx& ctx) {
    if (!ctx.config.ooni.empty()) {
        return existing(ctx.config.ooni, "inputs.ooni");
    }
    auto p = ctx.stage_dir(ctx.config.outcome_stage) / "ooni.jsonl";
    return fs::exists(p) ? p : fs::path{};
}

Json table_json(const analyze::Table& t) {
    return Json{{"name", t.name}, {"title", t.title}, {"header", t.header}, {"rows", t.rows}};
}

analyze::Table table_from_json(const Json& j) {
    return {j.at("name").get<std::string>(), j.at("title").get<std::string>(),
            j.at("header").get<std::vector<std::string>>(), j.at("rows").get<std::vector<std::vector<std::string>>>()};
}

StageRun analyze_stage(Ctx& ctx) {
    const auto& c = ctx.config;
    auto agg = ctx.stage_dir("aggregate");
    auto psl = analyze::PublicSuffixList::load_default();

    analyze::TabulateInput in;
    for (const auto& j : read_jsonl(agg / "summaries.jsonl")) {
        in.summaries.push_back(aggregate::url_run_summary_from_json(j));
    }
    for (const auto& j : read_jsonl(agg / "diffs.jsonl")) {
        in.diffs.push_back(aggregate::diff_record_from_json(j));
    }
    for (const auto& j : read_jsonl(agg / "baseline.jsonl")) {
        auto cls = probe::parse_response_class(j.at("class").get<std::string>());
        if (!cls) {
            throw SchemaError((agg / "baseline.jsonl").string(), 0, "unknown response class");
        }
        in.baseline.entries[j.at("url").get<std::string>()] = *cls;
    }
    auto vj = Json::parse(read_file(agg / "vantages.json"));
    in.vantages = vj.at("vantages").get<std::vector<std::string>>();
    in.baseline_vantages = vj.at("baseline_vantages").get<std::vector<std::string>>();
    if (auto p = ooni_source(ctx); !p.empty()) {
        in.ooni = analyze::load_ooni(p);
    } else {
        log().warn("analyze: no OONI records; nothing can be confirmed as suspected blocked");
    }

    auto suspected = analyze::suspected_blocked(in.diffs, in.summaries, in.ooni, psl,
                                                {static_cast<double>(c.thresholds.min_span_days)});
    auto disagreements = analyze::disagreement_report(in.summaries, in.ooni, psl);

    std::vector<std::string> urls;
    for (const auto& s : in.summaries) {
        urls.push_back(s.url);
    }
    auto probe_domains = analyze::domains_of(urls, psl);
    std::optional<analyze::DomainSet> source_domains;
    if (auto sources = ctx.stage_dir("sanitize") / "sources.jsonl"; fs::exists(sources)) {
        std::vector<std::string> src;
        for (const auto& j : read_jsonl(sources)) {
            src.push_back(j.at("url").get<std::string>());
        }
        source_domains = analyze::domains_of(src, psl);
    }
    std::vector<Json> domains;
    if (source_domains) {
        for (const auto& [d, n] : analyze::partition_new(probe_domains, *source_domains)) {
            domains.push_back(Json{{"domain", d.pld}, {"novelty", std::string(to_string(n))}});
        }
    } else {
        for (const auto& d : probe_domains) {
            domains.push_back(Json{{"domain", d.pld}, {"novelty", nullptr}});
        }
    }

    auto report = analyze::tabulate(in, psl, source_domains);
    fs::create_directories(ctx.out / "tables");
    Json tables = Json::array();
    for (const auto& t : report.tables) {
        write_file_atomic(ctx.out / "tables" / (t.name + ".tsv"), analyze::render_tsv(t));
        tables.push_back(table_json(t));
    }
    write_file_atomic(ctx.out / "jaccard_inaccessible.tsv", analyze::render_matrix_tsv(report.inaccessible_jaccard));
    write_file_atomic(ctx.out / "jaccard_error.tsv", analyze::render_matrix_tsv(report.error_jaccard));
    write_json(ctx.out / "tables.json", tables);
    write_records(ctx.out / "suspected.jsonl", suspected);
    write_records(ctx.out / "disagreements.jsonl", disagreements);
    write_jsonl_atomic(ctx.out / "domains.jsonl", domains);

    auto summary = report.summary;
    summary["suspected_blocked"] = suspected.size();
    summary["disagreements"] = disagreements.size();
    summary["probe_domains"] = probe_domains.size();
    if (source_domains) {
        std::size_t fresh = 0;
        for (const auto& d : domains) {
            fresh += d["novelty"] == "new" ? 1 : 0;
        }
        summary["new_domains"] = fresh;
    }
    write_json(ctx.out / "summary.json", summary);
    return {StageState::done, std::to_string(suspected.size()) + " suspected blocked domains, " +
                                  std::to_string(disagreements.size()) + " curl/OONI disagreements"};
}

// ------------------------------------------------------------------ report

analyze::Table matrix_table(const fs::path& p, const std::string& name, const std::string& title) {
    analyze::Table t{name, title, {}, {}};
    auto text = read_file(p);
    std::size_t start = 0;
    bool header = true;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::vector<std::string> cells;
        std::string line = text.substr(start, end - start);
        std::size_t s = 0;
        for (;;) {
            auto tab = line.find('\t', s);
            cells.push_back(line.substr(s, tab == std::string::npos ? std::string::npos : tab - s));
            if (tab == std::string::npos) {
                break;
            }
            s = tab + 1;
        }
        if (header) {
            t.header = std::move(cells);
            header = false;
        } else {
            t.rows.push_back(std::move(cells));
        }
        start = end + 1;
    }
    return t;
}

StageRun report_stage(Ctx& ctx) {
    auto an = ctx.stage_dir("analyze");
    std::string out;
    for (const auto& j : Json::parse(read_file(an / "tables.json"))) {
        out += analyze::render_text(table_from_json(j)) + "\n";
    }
    out += analyze::render_text(matrix_table(an / "jaccard_inaccessible.tsv", "jaccard_inaccessible",
                                             "Jaccard similarity of inaccessible-diff domains")) +
           "\n";
    out += analyze::render_text(
               matrix_table(an / "jaccard_error.tsv", "jaccard_error", "Jaccard similarity of error-diff domains")) +
           "\n";

    auto suspected = read_jsonl(an / "suspected.jsonl");
    out += "Suspected blocked domains: " + std::to_string(suspected.size()) + "\n";
    for (const auto& s : suspected) {
        out += "  " + s.at("domain").get<std::string>() + "  [" + s.value("evidence_class", "") + "]  at";
        for (const auto& v : s.at("vantages")) {
            out += " " + v.get<std::string>();
        }
        out += "\n";
    }
    auto disagreements = read_jsonl(an / "disagreements.jsonl");
    out += "\ncurl/OONI disagreements: " + std::to_string(disagreements.size()) + "\n";
    std::set<std::string> seen;
    for (const auto& d : disagreements) {
        auto line = "  " + d.at("domain").get<std::string>() + "  " + d.at("vantage").get<std::string>() +
                    "  curl " + d.at("curl_class").get<std::string>() + " vs OONI " +
                    d.at("ooni_verdict").get<std::string>();
        if (seen.insert(line).second) {
            out += line + "\n";
        }
    }
    write_file_atomic(ctx.out / "report.txt", out);
    auto summary = Json::parse(read_file(an / "summary.json"));
    summary["suspected_domains"] = Json::array();
    for (const auto& s : suspected) {
        summary["suspected_domains"].push_back(s.at("domain"));
    }
    write_json(ctx.out / "summary.json", summary);
    std::fputs(out.c_str(), stdout);
    return {StageState::done, "report written to " + (ctx.out / "report.txt").string()};
}

// ------------------------------------------------------------------ table

std::vector<fs::path> none(const Ctx&) { return {}; }

std::vector<std::string> fixed(std::initializer_list<std::string> s) { return s; }

const std::vector<Stage>& stages() {
    static const std::vector<Stage> all = {
        {"sanitize", [](const RunConfig&) { return fixed({}); },
         [](const Ctx& ctx) {
             auto in = ctx.config.source_lists;
             if (!ctx.config.pages.empty()) {
                 in.push_back(ctx.config.pages);
             }
             in.push_back(ctx.config.content_patterns);
             in.push_back(data_dir() / "domains");
             return in;
         },
         sanitize_stage},
        {"nlp", [](const RunConfig&) { return fixed({"sanitize"}); },
         [](const Ctx& ctx) {
             std::vector<fs::path> in{data_dir() / "langprofiles", data_dir() / "stopwords"};
             if (auto f = ctx.config.client("translation").text("fixture"); !f.empty()) {
                 in.emplace_back(f);
             }
             return in;
         },
         nlp_stage},
        {"topics", [](const RunConfig&) { return fixed({"nlp"}); },
         [](const Ctx& ctx) { return ctx.config.topics.exchange_files; }, topics_stage},
        {"expand", [](const RunConfig&) { return fixed({"topics"}); },
         [](const Ctx& ctx) {
             std::vector<fs::path> in{data_dir() / "prompts"};
             for (const char* name : {"llm", "trends"}) {
                 if (auto f = ctx.config.client(name).text("fixture"); !f.empty() && fs::exists(f)) {
                     in.emplace_back(f);
                 }
             }
             return in;
         },
         expand_stage},
        {"gen-queries", [](const RunConfig&) { return fixed({"topics", "expand"}); }, none, gen_queries_stage},
        {"crawl", [](const RunConfig&) { return fixed({"gen-queries"}); },
         [](const Ctx& ctx) {
             std::vector<fs::path> in;
             for (const char* k : {"replay", "index"}) {
                 if (auto f = ctx.config.client("search").text(k); !f.empty()) {
                     in.emplace_back(f);
                 }
             }
             return in;
         },
         crawl_stage, true},
        {"probe", [](const RunConfig&) { return fixed({"crawl"}); },
         [](const Ctx& ctx) {
             std::vector<fs::path> in;
             if (ctx.config.probe.transport == "simnet" && !ctx.config.scenario.empty()) {
                 in.push_back(ctx.config.scenario);
             }
             return in;
         },
         probe_stage, true},
        {"simulate", [](const RunConfig&) { return fixed({}); },
         [](const Ctx& ctx) {
             return std::vector<fs::path>{existing(ctx.config.scenario, "inputs.scenario")};
         },
         simulate_stage, true},
        {"aggregate", [](const RunConfig& c) { return std::vector<std::string>{c.outcome_stage}; }, none,
         aggregate_stage},
        {"analyze", [](const RunConfig&) { return fixed({"aggregate"}); },
         [](const Ctx& ctx) {
             std::vector<fs::path> in{data_dir() / "psl" / "public_suffix_list.dat"};
             if (!ctx.config.ooni.empty()) {
                 in.push_back(ctx.config.ooni);
             }
             if (auto s = ctx.stage_dir("sanitize") / "sources.jsonl"; fs::exists(s)) {
                 in.push_back(s);
             }
             return in;
         },
         analyze_stage},
        {"report", [](const RunConfig&) { return fixed({"analyze"}); }, none, report_stage},
    };
    return all;
}

}  // namespace

const std::vector<std::string>& stage_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& s : stages()) {
            n.push_back(s.name);
        }
        return n;
    }();
    return names;
}

std::vector<std::string> pipeline_for(const RunConfig& config) {
    if (config.outcome_stage == "simulate") {
        return {"simulate", "aggregate", "analyze", "report"};
    }
    return {"sanitize", "nlp", "topics", "expand", "gen-queries", "crawl", "probe", "aggregate", "analyze", "report"};
}

StageRun run_stage(const std::string& name, const RunConfig& config, const StageOptions& options,
                   std::vector<std::string>& secrets) {
    auto it = std::find_if(stages().begin(), stages().end(), [&](const Stage& s) { return s.name == name; });
    if (it == stages().end()) {
        throw ConfigError("unknown stage '" + name + "'");
    }
    const Stage& stage = *it;
    Ctx ctx{config, options, secrets, config.run_dir / name};

    std::vector<fs::path> inputs;
    for (const auto& req : stage.requires_(config)) {
        auto dir = config.run_dir / req;
        if (!read_manifest(dir)) {
            throw Error("missing stage: " + req);
        }
        inputs.push_back(dir);
    }
    for (auto& p : stage.extra_inputs(ctx)) {
        inputs.push_back(std::move(p));
    }
    auto input_hashes = hash_inputs(inputs);
    auto config_hash = sha256_hex(config.raw.dump());

    auto recorded = read_manifest(ctx.out);
    if (recorded && !options.force && up_to_date(*recorded, input_hashes, config_hash, config.master_seed, ctx.out)) {
        log().info("{}: up to date", name);
        return {StageState::up_to_date, "up to date"};
    }
    // A completed stage is recomputed from scratch; an interrupted resumable
    // stage keeps its checkpoint.
    if (recorded || !stage.resumable || options.force) {
        fs::remove_all(ctx.out);
    }
    fs::create_directories(ctx.out);

    auto t0 = std::chrono::steady_clock::now();
    log().info("{}: running", name);
    auto result = stage.run(ctx);
    if (result.state == StageState::paused) {
        return result;
    }
    StageManifest m;
    m.stage = name;
    m.inputs = std::move(input_hashes);
    m.outputs = hash_outputs(ctx.out);
    m.config_hash = config_hash;
    m.seed = config.master_seed;
    m.duration_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    m.completed_at = format_utc(now_utc());
    write_manifest(ctx.out, m);
    return result;
}

}  // namespace probegen::cli
