#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/nlp/translate.hpp"

namespace probegen::topics {

enum class Method { lda, bertopic, top2vec };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view s);

struct TopicAssignment {
    std::string url;
    int topic_id = 0;
    Method method = Method::lda;
    double score = 0.0;
};

struct ScoredTerm {
    std::string term;
    double score = 0.0;
};

struct TopicKeywords {
    int topic_id = 0;
    Method method = Method::lda;
    std::vector<ScoredTerm> keywords;  // descending score, ties by term
};

Json to_json(const TopicAssignment& a);
Json to_json(const TopicKeywords& k);

// Sorts by descending score, then ascending term.
void rank_terms(std::vector<ScoredTerm>& terms);

// Replaces each term by its Porter stem (word by word for multi-word terms)
// and merges counts. nullopt marks a discarded document: fewer than
// `min_distinct` distinct stems remain.
std::optional<nlp::EnglishBag> stem_and_filter(const nlp::EnglishBag& bag, std::size_t min_distinct = 4);

}  // namespace probegen::topics
