#include "probegen/cli/config.hpp"

#include <algorithm>
#include <set>

#include "probegen/common/error.hpp"
#include "probegen/common/paths.hpp"

namespace probegen::cli {

namespace {

const char* const kClients[] = {"search", "llm", "trends", "translation"};

[[noreturn]] void bad(const std::string& what) { throw ConfigError("config: " + what); }

const Json& section(const Json& j, const char* key) {
    static const Json empty = Json::object();
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return empty;
    }
    if (!it->is_object()) {
        bad(std::string("'") + key + "' must be an object");
    }
    return *it;
}

template <typename T>
T get(const Json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    try {
        return it->get<T>();
    } catch (const Json::exception&) {
        bad(std::string("'") + key + "' has the wrong type");
    }
}

fs::path path_of(const Json& j, const char* key, const fs::path& base) {
    auto s = get<std::string>(j, key, "");
    if (s.empty()) {
        return {};
    }
    fs::path p(s);
    return p.is_absolute() ? p : (base / p).lexically_normal();
}

}  // namespace

std::string ClientConfig::text(const char* key, const std::string& fallback) const {
    return get<std::string>(options, key, fallback);
}

double ClientConfig::number(const char* key, double fallback) const { return get<double>(options, key, fallback); }

const ClientConfig& RunConfig::client(const std::string& name) const {
    static const ClientConfig fixture{};
    auto it = clients.find(name);
    return it == clients.end() ? fixture : it->second;
}

std::vector<std::string> RunConfig::vantage_ids() const {
    std::vector<std::string> out;
    for (const auto& v : vantages) {
        out.push_back(v.id);
    }
    return out;
}

RunConfig config_from_json(const Json& j, const fs::path& base) {
    if (!j.is_object()) {
        bad("top level must be an object");
    }
    RunConfig c;
    c.raw = j;
    c.run_dir = path_of(j, "run_dir", base);
    if (c.run_dir.empty()) {
        c.run_dir = base / "run";
    }
    c.master_seed = get<std::uint64_t>(j, "master_seed", 1);
    c.parallelism = get<std::size_t>(j, "parallelism", 1);
    if (c.parallelism < 1) {
        bad("parallelism must be at least 1");
    }

    const auto& t = section(j, "thresholds");
    c.thresholds.consistency = get(t, "consistency", c.thresholds.consistency);
    c.thresholds.min_chars = get(t, "min_chars", c.thresholds.min_chars);
    c.thresholds.timeout_s = get(t, "timeout_s", c.thresholds.timeout_s);
    c.thresholds.min_span_days = get(t, "min_span_days", c.thresholds.min_span_days);
    if (!(c.thresholds.consistency > 0.5 && c.thresholds.consistency <= 1)) {
        bad("thresholds.consistency must lie in (0.5, 1]");
    }
    if (c.thresholds.timeout_s < 1 || c.thresholds.min_span_days < 0) {
        bad("thresholds.timeout_s must be positive and min_span_days non-negative");
    }

    const auto& in = section(j, "inputs");
    for (const auto& p : in.value("source_lists", Json::array())) {
        fs::path sp(p.get<std::string>());
        c.source_lists.push_back(sp.is_absolute() ? sp : (base / sp).lexically_normal());
    }
    c.pages = path_of(in, "pages", base);
    c.scenario = path_of(in, "scenario", base);
    c.ooni = path_of(in, "ooni", base);
    c.content_patterns = path_of(in, "content_patterns", base);
    if (c.content_patterns.empty()) {
        c.content_patterns = data_dir() / "patterns";
    }

    const auto& tp = section(j, "topics");
    c.topics.K = get(tp, "K", c.topics.K);
    c.topics.alpha = get(tp, "alpha", c.topics.alpha);
    c.topics.beta = get(tp, "beta", c.topics.beta);
    c.topics.iters = get(tp, "iters", c.topics.iters);
    c.topics.keywords_per_topic = get(tp, "keywords_per_topic", c.topics.keywords_per_topic);
    c.topics.min_distinct_stems = get(tp, "min_distinct_stems", c.topics.min_distinct_stems);
    for (const auto& p : tp.value("exchange_files", Json::array())) {
        fs::path ep(p.get<std::string>());
        c.topics.exchange_files.push_back(ep.is_absolute() ? ep : (base / ep).lexically_normal());
    }
    if (c.topics.K < 2 || c.topics.iters < 1 || c.topics.keywords_per_topic < 1 || !(c.topics.alpha > 0) ||
        !(c.topics.beta > 0)) {
        bad("topics: need K >= 2, iters >= 1, keywords_per_topic >= 1, alpha > 0, beta > 0");
    }

    const auto& ex = section(j, "expand");
    c.llm_max_keywords = get(ex, "llm_max_keywords", c.llm_max_keywords);
    c.trends_max_keywords = get(ex, "trends_max_keywords", c.trends_max_keywords);
    c.trends_window = get(ex, "trends_window", c.trends_window);

    const auto& q = section(j, "queries");
    c.per_topic_budget = get(q, "per_topic_budget", c.per_topic_budget);
    c.permutations = get(q, "permutations", c.permutations);
    if (c.per_topic_budget < 1 || c.permutations < 1) {
        bad("queries: per_topic_budget and permutations must be at least 1");
    }

    const auto& cr = section(j, "crawl");
    c.search_max_retries = get(cr, "max_retries", c.search_max_retries);
    c.search_requests_per_second = get(cr, "requests_per_second", c.search_requests_per_second);

    const auto& pr = section(j, "probe");
    c.probe.n_runs = get(pr, "n_runs", c.probe.n_runs);
    c.probe.transport = get(pr, "transport", c.probe.transport);
    c.probe.run_interval_hours = get(pr, "run_interval_hours", c.probe.run_interval_hours);
    c.probe.requests_per_second = get(pr, "requests_per_second", c.probe.requests_per_second);
    c.probe.user_agent = get(pr, "user_agent", c.probe.user_agent);
    if (c.probe.n_runs < 1) {
        bad("probe.n_runs must be at least 1");
    }
    if (c.probe.transport != "simnet" && c.probe.transport != "curl") {
        bad("probe.transport must be simnet or curl");
    }
    if (c.probe.run_interval_hours < 0) {
        bad("probe.run_interval_hours must be non-negative");
    }
    c.outcome_stage = get<std::string>(section(j, "aggregate"), "outcomes_from", c.outcome_stage);
    if (c.outcome_stage != "probe" && c.outcome_stage != "simulate") {
        bad("aggregate.outcomes_from must be probe or simulate");
    }

    const auto& cl = section(j, "clients");
    for (const auto& [name, value] : cl.items()) {
        if (std::find(std::begin(kClients), std::end(kClients), name) == std::end(kClients)) {
            bad("unknown client '" + name + "'");
        }
        ClientConfig cc;
        cc.mode = get<std::string>(value, "mode", "fixture");
        if (cc.mode != "fixture" && cc.mode != "real") {
            bad("clients." + name + ".mode must be fixture or real");
        }
        cc.options = value;
        // Fixture paths resolve like every other path.
        for (auto& [k, v] : cc.options.items()) {
            if (v.is_string() && (k == "fixture" || k == "index" || k == "replay")) {
                fs::path fp(v.get<std::string>());
                v = (fp.is_absolute() ? fp : (base / fp).lexically_normal()).string();
            }
        }
        c.clients[name] = std::move(cc);
    }

    std::set<std::string> ids;
    for (const auto& v : j.value("vantages", Json::array())) {
        VantageConfig vc;
        if (v.is_string()) {
            vc.id = v.get<std::string>();
        } else {
            vc.id = v.at("id").get<std::string>();
            vc.proxy = get<std::string>(v, "proxy", "");
        }
        if (vc.id.empty() || !ids.insert(vc.id).second) {
            bad("vantage ids must be non-empty and unique");
        }
        c.vantages.push_back(std::move(vc));
    }
    for (const auto& b : j.value("baseline_vantages", Json::array())) {
        auto id = b.get<std::string>();
        if (!ids.contains(id)) {
            bad("baseline vantage '" + id + "' is not in the vantage list");
        }
        c.baseline_vantages.push_back(id);
    }
    return c;
}

RunConfig load_config(const fs::path& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw ConfigError("cannot parse config " + path.string() + ": " + e.what());
    } catch (const Error& e) {
        throw ConfigError(e.what());
    }
    auto base = fs::absolute(path).parent_path();
    auto c = config_from_json(j, base);
    c.config_path = fs::absolute(path);
    return c;
}

}  // namespace probegen::cli
