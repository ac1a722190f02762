#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probegen/common/error.hpp"
#include "probegen/common/jsonl.hpp"
#include "probegen/expand/clients.hpp"
#include "probegen/expand/prompt.hpp"
#include "probegen/topics/model.hpp"

namespace probegen::expand {

enum class ExpansionMethod { lda_gpt, top2vec_trends };
enum class Provenance { llm, trends_top, trends_rising };

std::string_view to_string(ExpansionMethod m);
std::string_view to_string(Provenance p);

struct ExpandedKeyword {
    std::string term;  // normalized: trimmed, case-folded, inner whitespace collapsed
    Provenance provenance = Provenance::llm;
};

struct ExpandedKeywords {
    int topic_id = 0;
    ExpansionMethod method = ExpansionMethod::lda_gpt;
    std::vector<ExpandedKeyword> keywords;

    std::vector<std::string> terms() const;
};

Json to_json(const ExpandedKeywords& e);
ExpandedKeywords expanded_keywords_from_json(const Json& j);

class ExpansionError : public Error {
public:
    using Error::Error;
};

struct LlmExpandOptions {
    std::size_t max_keywords = 30;
    int attempts = 2;  // the first call plus one retry on an unparseable reply
};

// Renders the prompt with the seed list, parses the reply and keeps only
// normalized keywords that are new relative to the seed and to each other.
// Throws ExpansionError when no attempt parses or nothing survives the
// filter; ClientError from the client propagates.
ExpandedKeywords llm_expand(int topic_id, const std::vector<std::string>& seed_keywords, LlmClient& client,
                            const PromptTemplate& prompt, const LlmExpandOptions& options = {});

struct TrendsExpandOptions {
    std::string window{kDefaultTrendsWindow};
    std::size_t max_keywords = 40;
};

// Related queries of kw1 and kw2 merged in the order kw1 top, kw2 top,
// kw1 rising, kw2 rising; normalized, deduplicated, truncated. A provider
// failure yields an empty result and a warning.
ExpandedKeywords trends_expand(int topic_id, const std::string& kw1, const std::string& kw2, TrendsClient& client,
                               const TrendsExpandOptions& options = {});

// The two highest-ranked keywords of a topic (ties by term), or nullopt with a
// warning when the topic has fewer than two.
std::optional<std::pair<std::string, std::string>> top_two(const topics::TopicKeywords& topic);

}  // namespace probegen::expand
