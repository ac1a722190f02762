#include "probegen/aggregate/summary.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "probegen/common/log.hpp"

namespace probegen::aggregate {

namespace {

constexpr double kShareEpsilon = 1e-9;

ResponseClass class_from(const std::string& s) {
    auto c = probe::parse_response_class(s);
    if (!c) {
        throw std::invalid_argument("unknown response class '" + s + "'");
    }
    return *c;
}

Json int_map(const std::map<int, int>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) {
        j[std::to_string(k)] = v;
    }
    return j;
}

std::map<int, int> int_map_from(const Json& j) {
    std::map<int, int> m;
    for (const auto& [k, v] : j.items()) {
        m[std::stoi(k)] = v.get<int>();
    }
    return m;
}

}  // namespace

Json to_json(const UrlRunSummary& s) {
    Json j;
    j["url"] = s.url;
    j["vantage"] = s.vantage_id;
    Json counts = Json::object();
    for (auto c : {ResponseClass::Accessible, ResponseClass::Inaccessible, ResponseClass::Error}) {
        auto it = s.counts.find(c);
        counts[std::string(probe::to_string(c))] = it == s.counts.end() ? 0 : it->second;
    }
    j["counts"] = std::move(counts);
    j["n_runs"] = s.n_runs;
    j["consistent"] = s.consistent ? Json(std::string(probe::to_string(*s.consistent))) : Json(nullptr);
    j["http_codes"] = int_map(s.http_codes);
    j["exit_codes"] = int_map(s.exit_codes);
    j["first_seen"] = format_utc(s.first_seen);
    j["last_seen"] = format_utc(s.last_seen);
    return j;
}

UrlRunSummary url_run_summary_from_json(const Json& j) {
    UrlRunSummary s;
    s.url = j.at("url").get<std::string>();
    s.vantage_id = j.at("vantage").get<std::string>();
    for (const auto& [k, v] : j.at("counts").items()) {
        if (int n = v.get<int>(); n > 0) {
            s.counts[class_from(k)] = n;
        }
    }
    s.n_runs = j.at("n_runs").get<int>();
    if (!j.at("consistent").is_null()) {
        s.consistent = class_from(j["consistent"].get<std::string>());
    }
    s.http_codes = int_map_from(j.at("http_codes"));
    s.exit_codes = int_map_from(j.at("exit_codes"));
    s.first_seen = parse_utc(j.at("first_seen").get<std::string>());
    s.last_seen = parse_utc(j.at("last_seen").get<std::string>());
    return s;
}

UrlRunSummary summarize(std::span<const probe::FetchOutcome> outcomes, const ConsistencyRule& rule) {
    if (outcomes.empty()) {
        throw std::invalid_argument("summarize needs at least one outcome");
    }
    UrlRunSummary s;
    s.url = outcomes.front().url;
    s.vantage_id = outcomes.front().vantage_id;
    s.first_seen = s.last_seen = outcomes.front().timestamp;
    for (const auto& o : outcomes) {
        if (o.url != s.url || o.vantage_id != s.vantage_id) {
            throw std::invalid_argument("summarize mixes urls or vantages");
        }
        ++s.counts[probe::classify(o)];
        ++s.n_runs;
        ++(o.kind == probe::OutcomeKind::http_status ? s.http_codes : s.exit_codes)[o.code];
        s.first_seen = std::min(s.first_seen, o.timestamp);
        s.last_seen = std::max(s.last_seen, o.timestamp);
    }
    auto best = std::max_element(s.counts.begin(), s.counts.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
    double share = static_cast<double>(best->second) / s.n_runs;
    bool ok = rule.strict ? share > rule.threshold + kShareEpsilon : share >= rule.threshold - kShareEpsilon;
    if (ok) {
        s.consistent = best->first;
    }
    return s;
}

std::vector<UrlRunSummary> summarize_all(const std::vector<probe::FetchOutcome>& outcomes,
                                         const ConsistencyRule& rule) {
    std::map<std::pair<std::string, std::string>, std::vector<probe::FetchOutcome>> groups;
    std::map<std::pair<std::string, std::string>, std::set<int>> runs;
    std::size_t repeats = 0;
    for (const auto& o : outcomes) {
        auto key = std::pair{o.vantage_id, o.url};
        if (!runs[key].insert(o.run_id).second) {
            ++repeats;
            continue;
        }
        groups[key].push_back(o);
    }
    if (repeats > 0) {
        log().warn("{} repeated (url, vantage, run) outcomes ignored", repeats);
    }
    std::vector<UrlRunSummary> out;
    out.reserve(groups.size());
    for (const auto& [key, list] : groups) {
        out.push_back(summarize(list, rule));
    }
    return out;
}

BaselineSet build_baseline(const std::vector<UrlRunSummary>& summaries,
                           const std::vector<std::string>& baseline_vantages) {
    std::set<std::string> wanted(baseline_vantages.begin(), baseline_vantages.end());
    std::map<std::string, std::map<std::string, std::optional<ResponseClass>>> by_url;
    for (const auto& s : summaries) {
        if (wanted.contains(s.vantage_id)) {
            by_url[s.url][s.vantage_id] = s.consistent;
        }
    }
    BaselineSet out;
    for (const auto& [url, per_vantage] : by_url) {
        if (per_vantage.size() != wanted.size()) {
            continue;
        }
        std::optional<ResponseClass> agreed;
        bool ok = true;
        for (const auto& [v, cls] : per_vantage) {
            if (!cls || (agreed && *agreed != *cls)) {
                ok = false;
                break;
            }
            agreed = cls;
        }
        if (ok && agreed) {
            out.entries[url] = *agreed;
        }
    }
    return out;
}

Json to_json(const DiffRecord& d) {
    Json j;
    j["url"] = d.url;
    j["vantage"] = d.vantage_id;
    j["class"] = std::string(probe::to_string(d.cls));
    j["baseline_class"] = d.baseline_class ? Json(std::string(probe::to_string(*d.baseline_class))) : Json(nullptr);
    return j;
}

DiffRecord diff_record_from_json(const Json& j) {
    DiffRecord d;
    d.url = j.at("url").get<std::string>();
    d.vantage_id = j.at("vantage").get<std::string>();
    d.cls = class_from(j.at("class").get<std::string>());
    if (!j.at("baseline_class").is_null()) {
        d.baseline_class = class_from(j["baseline_class"].get<std::string>());
    }
    return d;
}

std::optional<DiffRecord> diff(const UrlRunSummary& summary, const BaselineSet& baseline) {
    if (!summary.consistent) {
        return std::nullopt;
    }
    auto it = baseline.entries.find(summary.url);
    if (it == baseline.entries.end()) {
        return DiffRecord{summary.url, summary.vantage_id, *summary.consistent, std::nullopt};
    }
    if (it->second == *summary.consistent) {
        return std::nullopt;
    }
    return DiffRecord{summary.url, summary.vantage_id, *summary.consistent, it->second};
}

std::vector<DiffRecord> diff_all(const std::vector<UrlRunSummary>& summaries, const BaselineSet& baseline,
                                 const std::vector<std::string>& baseline_vantages) {
    std::set<std::string> skip(baseline_vantages.begin(), baseline_vantages.end());
    std::vector<DiffRecord> out;
    for (const auto& s : summaries) {
        if (skip.contains(s.vantage_id)) {
            continue;
        }
        if (auto d = diff(s, baseline)) {
            out.push_back(std::move(*d));
        }
    }
    return out;
}

}  // namespace probegen::aggregate
