#include "probegen/expand/expand.hpp"

#include <unordered_set>

#include "probegen/common/log.hpp"
#include "probegen/common/text.hpp"

namespace probegen::expand {

std::string_view to_string(ExpansionMethod m) {
    return m == ExpansionMethod::lda_gpt ? "lda_gpt" : "top2vec_trends";
}

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::llm: return "llm";
        case Provenance::trends_top: return "trends_top";
        case Provenance::trends_rising: return "trends_rising";
    }
    return "llm";
}

std::vector<std::string> ExpandedKeywords::terms() const {
    std::vector<std::string> out;
    out.reserve(keywords.size());
    for (const auto& k : keywords) {
        out.push_back(k.term);
    }
    return out;
}

Json to_json(const ExpandedKeywords& e) {
    Json j;
    j["topic_id"] = e.topic_id;
    j["method"] = std::string(to_string(e.method));
    Json kws = Json::array();
    for (const auto& k : e.keywords) {
        kws.push_back({{"term", k.term}, {"provenance", std::string(to_string(k.provenance))}});
    }
    j["keywords"] = std::move(kws);
    return j;
}

ExpandedKeywords expanded_keywords_from_json(const Json& j) {
    ExpandedKeywords e;
    e.topic_id = j.at("topic_id").get<int>();
    auto method = j.at("method").get<std::string>();
    if (method == "lda_gpt") {
        e.method = ExpansionMethod::lda_gpt;
    } else if (method == "top2vec_trends") {
        e.method = ExpansionMethod::top2vec_trends;
    } else {
        throw std::invalid_argument("unknown expansion method '" + method + "'");
    }
    for (const auto& k : j.at("keywords")) {
        auto prov = k.at("provenance").get<std::string>();
        Provenance p = prov == "llm"          ? Provenance::llm
                       : prov == "trends_top" ? Provenance::trends_top
                       : prov == "trends_rising"
                           ? Provenance::trends_rising
                           : throw std::invalid_argument("unknown provenance '" + prov + "'");
        e.keywords.push_back({k.at("term").get<std::string>(), p});
    }
    return e;
}

ExpandedKeywords llm_expand(int topic_id, const std::vector<std::string>& seed_keywords, LlmClient& client,
                            const PromptTemplate& prompt, const LlmExpandOptions& options) {
    if (seed_keywords.empty()) {
        throw ExpansionError("empty seed keyword list");
    }
    auto rendered = prompt.render(seed_keywords);
    std::optional<std::vector<std::string>> parsed;
    for (int attempt = 0; attempt < options.attempts && !parsed; ++attempt) {
        parsed = parse_keyword_response(client.complete(rendered));
        if (!parsed) {
            log().warn("topic {}: unparseable expansion reply (attempt {})", topic_id, attempt + 1);
        }
    }
    if (!parsed) {
        throw ExpansionError("topic " + std::to_string(topic_id) + ": unparseable expansion reply");
    }
    std::unordered_set<std::string> seen;
    for (const auto& s : seed_keywords) {
        seen.insert(text::normalize_term(s));
    }
    ExpandedKeywords out{topic_id, ExpansionMethod::lda_gpt, {}};
    for (const auto& raw : *parsed) {
        auto term = text::normalize_term(raw);
        if (term.empty() || !seen.insert(term).second) {
            continue;
        }
        out.keywords.push_back({std::move(term), Provenance::llm});
        if (out.keywords.size() == options.max_keywords) {
            break;
        }
    }
    if (out.keywords.empty()) {
        throw ExpansionError("topic " + std::to_string(topic_id) + ": no new keywords after filtering");
    }
    return out;
}

ExpandedKeywords trends_expand(int topic_id, const std::string& kw1, const std::string& kw2, TrendsClient& client,
                               const TrendsExpandOptions& options) {
    ExpandedKeywords out{topic_id, ExpansionMethod::top2vec_trends, {}};
    TrendsResponse r1;
    TrendsResponse r2;
    try {
        r1 = client.related(kw1, options.window);
        r2 = client.related(kw2, options.window);
    } catch (const ClientError& e) {
        log().warn("topic {}: trends provider failed ({}); continuing without trends keywords", topic_id,
                   e.what());
        return out;
    }
    std::unordered_set<std::string> seen;
    auto take = [&](const std::vector<std::string>& list, Provenance p) {
        for (const auto& raw : list) {
            if (out.keywords.size() == options.max_keywords) {
                return;
            }
            auto term = text::normalize_term(raw);
            if (!term.empty() && seen.insert(term).second) {
                out.keywords.push_back({std::move(term), p});
            }
        }
    };
    take(r1.top, Provenance::trends_top);
    take(r2.top, Provenance::trends_top);
    take(r1.rising, Provenance::trends_rising);
    take(r2.rising, Provenance::trends_rising);
    if (out.keywords.empty()) {
        log().warn("topic {}: trends provider returned no related queries", topic_id);
    }
    return out;
}

std::optional<std::pair<std::string, std::string>> top_two(const topics::TopicKeywords& topic) {
    auto ranked = topic.keywords;
    topics::rank_terms(ranked);
    if (ranked.size() < 2) {
        log().warn("topic {}: fewer than two keywords, skipped for trends", topic.topic_id);
        return std::nullopt;
    }
    return std::pair{ranked[0].term, ranked[1].term};
}

}  // namespace probegen::expand
