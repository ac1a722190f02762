#pragma once

#include <map>
#include <vector>

#include "probegen/nlp/translate.hpp"
#include "probegen/topics/model.hpp"

namespace probegen::topics {

// Topic-level TF-IDF. Each topic's documents are merged into one
// pseudo-document; with N topics and df(t) the number of topics whose
// pseudo-document contains t:
//   tf(t)  = count(t) / pseudo-document length
//   idf(t) = ln((1 + N) / (1 + df(t))) + 1
// Returns the top_n terms per topic by tf * idf, ties broken by term.
// Throws std::invalid_argument when top_n <= 0 or a topic has no documents.
std::vector<TopicKeywords> tfidf_keywords(const std::map<int, std::vector<nlp::EnglishBag>>& docs_by_topic,
                                          int top_n, Method method = Method::lda);

}  // namespace probegen::topics
