#include "probegen/querygen/tiers.hpp"

#include <stdexcept>
#include <unordered_set>

namespace probegen::querygen {

std::string_view to_string(QueryMethod m) {
    switch (m) {
        case QueryMethod::lda: return "lda";
        case QueryMethod::lda_gpt: return "lda_gpt";
        case QueryMethod::top2vec: return "top2vec";
        case QueryMethod::top2vec_trends: return "top2vec_trends";
        case QueryMethod::bertopic: return "bertopic";
    }
    return "lda";
}

QueryMethod parse_query_method(std::string_view s) {
    for (auto m : {QueryMethod::lda, QueryMethod::lda_gpt, QueryMethod::top2vec, QueryMethod::top2vec_trends,
                   QueryMethod::bertopic}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw std::invalid_argument("unknown query method '" + std::string(s) + "'");
}

std::size_t TieredKeywords::total() const {
    std::size_t n = 0;
    for (const auto& t : tiers) {
        n += t.size();
    }
    return n;
}

TieredKeywords tier_keywords(int topic_id, QueryMethod method, const std::vector<std::string>& ranked) {
    if (ranked.empty()) {
        throw std::invalid_argument("cannot tier an empty keyword list");
    }
    std::unordered_set<std::string> seen;
    TieredKeywords out{topic_id, method, {}};
    std::size_t pos = 0;
    for (std::size_t tier = 0; tier < 4; ++tier) {
        std::size_t remaining = ranked.size() - pos;
        std::size_t left = 4 - tier;
        std::size_t take = (remaining + left - 1) / left;
        for (std::size_t i = 0; i < take; ++i, ++pos) {
            if (!seen.insert(ranked[pos]).second) {
                throw std::invalid_argument("repeated keyword '" + ranked[pos] + "'");
            }
            out.tiers[tier].push_back({ranked[pos], static_cast<int>(pos)});
        }
    }
    return out;
}

Json to_json(const TieredKeywords& t) {
    Json j;
    j["topic_id"] = t.topic_id;
    j["method"] = std::string(to_string(t.method));
    Json tiers = Json::array();
    for (const auto& tier : t.tiers) {
        Json list = Json::array();
        for (const auto& term : tier) {
            list.push_back(term.term);
        }
        tiers.push_back(std::move(list));
    }
    j["tiers"] = std::move(tiers);
    return j;
}

}  // namespace probegen::querygen
