#include "probegen/topics/tfidf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace probegen::topics {

std::vector<TopicKeywords> tfidf_keywords(const std::map<int, std::vector<nlp::EnglishBag>>& docs_by_topic,
                                          int top_n, Method method) {
    if (top_n <= 0) {
        throw std::invalid_argument("top_n must be positive");
    }
    std::map<int, std::map<std::string, long long>> pseudo;
    std::unordered_map<std::string, int> df;
    for (const auto& [topic, docs] : docs_by_topic) {
        if (docs.empty()) {
            throw std::invalid_argument("topic " + std::to_string(topic) + " has no documents");
        }
        auto& merged = pseudo[topic];
        for (const auto& bag : docs) {
            for (const auto& [term, count] : bag.counts) {
                merged[term] += count;
            }
        }
        for (const auto& [term, count] : merged) {
            ++df[term];
        }
    }
    const double n_topics = static_cast<double>(pseudo.size());
    std::vector<TopicKeywords> out;
    for (const auto& [topic, merged] : pseudo) {
        long long length = 0;
        for (const auto& [term, count] : merged) {
            length += count;
        }
        TopicKeywords tk;
        tk.topic_id = topic;
        tk.method = method;
        for (const auto& [term, count] : merged) {
            double tf = static_cast<double>(count) / static_cast<double>(length);
            double idf = std::log((1.0 + n_topics) / (1.0 + df[term])) + 1.0;
            tk.keywords.push_back({term, tf * idf});
        }
        rank_terms(tk.keywords);
        if (tk.keywords.size() > static_cast<std::size_t>(top_n)) {
            tk.keywords.resize(top_n);
        }
        out.push_back(std::move(tk));
    }
    return out;
}

}  // namespace probegen::topics
