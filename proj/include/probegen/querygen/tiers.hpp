#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "probegen/common/jsonl.hpp"

namespace probegen::querygen {

// Keyword stream a query was generated from.
enum class QueryMethod { lda, lda_gpt, top2vec, top2vec_trends, bertopic };

std::string_view to_string(QueryMethod m);
QueryMethod parse_query_method(std::string_view s);  // throws std::invalid_argument

struct TieredTerm {
    std::string term;
    int rank = 0;  // 0-based position in the ranked input
};

struct TieredKeywords {
    int topic_id = 0;
    QueryMethod method = QueryMethod::lda;
    std::array<std::vector<TieredTerm>, 4> tiers;

    std::size_t total() const;
};

// Splits a ranked (best first) term list into four tiers by rank quartile,
// each tier taking ceil(remaining / tiers left): 10 -> 3/3/2/2, 3 -> 1/1/1/0.
// Throws std::invalid_argument on empty input or repeated terms.
TieredKeywords tier_keywords(int topic_id, QueryMethod method, const std::vector<std::string>& ranked);

Json to_json(const TieredKeywords& t);

}  // namespace probegen::querygen
