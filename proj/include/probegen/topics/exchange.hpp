#pragma once

#include <filesystem>
#include <vector>

#include "probegen/topics/model.hpp"

namespace probegen::topics {

// Topic-exchange files: one JSON object per line, two record kinds.
//   assignment {"url", "method", "topic_id", "score"}
//   keywords   {"method", "topic_id", "keywords": [{"term", "score"}, ...]}
// An optional "type" field ("assignment" | "keywords") must agree with the
// fields present. Only embedding methods (bertopic, top2vec) are accepted.
// topic_id -1 marks outliers.
struct ExchangeData {
    std::vector<TopicAssignment> assignments;
    std::vector<TopicKeywords> keywords;  // ordered by (method, topic_id)
    std::size_t outliers_dropped = 0;
};

// Validates and loads an exchange file. Outlier rows are dropped and counted.
// Throws SchemaError (with line number) on malformed records, unknown method
// tags, duplicate keyword records, repeated terms, non-finite scores,
// assignments to topics without keywords, and empty files.
ExchangeData ingest_plugin_topics(const std::filesystem::path& path);

// Writes keywords records then assignment records; the output ingests cleanly.
void write_exchange(const std::filesystem::path& path, const std::vector<TopicKeywords>& keywords,
                    const std::vector<TopicAssignment>& assignments);

}  // namespace probegen::topics
