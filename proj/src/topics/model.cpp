#include "probegen/topics/model.hpp"

#include <algorithm>

#include "probegen/common/text.hpp"
#include "probegen/topics/porter.hpp"

namespace probegen::topics {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::lda: return "lda";
        case Method::bertopic: return "bertopic";
        case Method::top2vec: return "top2vec";
    }
    return "lda";
}

std::optional<Method> parse_method(std::string_view s) {
    if (s == "lda") {
        return Method::lda;
    }
    if (s == "bertopic") {
        return Method::bertopic;
    }
    if (s == "top2vec") {
        return Method::top2vec;
    }
    return std::nullopt;
}

Json to_json(const TopicAssignment& a) {
    Json j;
    j["url"] = a.url;
    j["method"] = std::string(to_string(a.method));
    j["topic_id"] = a.topic_id;
    j["score"] = a.score;
    return j;
}

Json to_json(const TopicKeywords& k) {
    Json j;
    j["method"] = std::string(to_string(k.method));
    j["topic_id"] = k.topic_id;
    Json kws = Json::array();
    for (const auto& t : k.keywords) {
        kws.push_back({{"term", t.term}, {"score", t.score}});
    }
    j["keywords"] = std::move(kws);
    return j;
}

void rank_terms(std::vector<ScoredTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
        return a.score != b.score ? a.score > b.score : a.term < b.term;
    });
}

std::optional<nlp::EnglishBag> stem_and_filter(const nlp::EnglishBag& bag, std::size_t min_distinct) {
    nlp::EnglishBag out;
    out.url = bag.url;
    for (const auto& [term, count] : bag.counts) {
        std::string stemmed;
        for (const auto& word : text::split_whitespace(term)) {
            if (!stemmed.empty()) {
                stemmed.push_back(' ');
            }
            stemmed += porter_stem(word);
        }
        if (!stemmed.empty()) {
            out.counts[stemmed] += count;
        }
    }
    if (out.counts.size() < min_distinct) {
        return std::nullopt;
    }
    return out;
}

}  // namespace probegen::topics
