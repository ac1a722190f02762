#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "probegen/common/error.hpp"
#include "probegen/common/jsonl.hpp"
#include "probegen/common/rng.hpp"
#include "probegen/querygen/tiers.hpp"

namespace probegen::querygen {

inline constexpr int kMinQuerySize = 4;
inline constexpr int kMaxQuerySize = 9;
inline constexpr int kMaxTier1 = 3;

// Per-query tier share ranges; tier 4 takes the remainder.
struct ShareRanges {
    double t1_lo = 0.25, t1_hi = 0.5;
    double t2_lo = 0.05, t2_hi = 0.4;
    double t3_lo = 0.05, t3_hi = 0.2;
};

struct QueryKeyword {
    std::string term;
    int tier = 1;  // 1..4
    int rank = 0;  // position in the topic's ranked list
};

struct SearchQuery {
    std::string query_id;
    int topic_id = 0;
    QueryMethod method = QueryMethod::lda;
    std::vector<QueryKeyword> keywords;  // search order
    std::array<int, 4> tier_histogram{};
    Json seed_trace;                     // stream seed, draw counter, shares

    std::vector<std::string> terms() const;
};

Json to_json(const SearchQuery& q);
SearchQuery search_query_from_json(const Json& j);

class InsufficientKeywords : public Error {
public:
    using Error::Error;
};

// Tier counts for one query: uniform shares in range, scaled down when the
// first three exceed 1, largest-remainder rounding to `size` (ties to the
// lower tier), tier 1 capped at 3, then each tier clipped to what it holds
// with the overflow moved to tier 4, 3, 2, 1 in that order. Throws
// InsufficientKeywords when the tiers cannot supply `size` keywords.
std::array<int, 4> tier_counts(const std::array<double, 4>& shares, int size,
                               const std::array<std::size_t, 4>& available);

// Draws one query of exactly `size` keywords. Members are sampled without
// replacement within each tier and the final order is a uniform permutation.
// Throws std::invalid_argument for size outside [4, 9] and
// InsufficientKeywords when the tiers cannot supply the draw.
SearchQuery sample_query(const TieredKeywords& tiers, Rng& rng, int size, const ShareRanges& ranges = {});

struct GenerateOptions {
    int per_topic_budget = 10;
    int attempts_per_query = 4;  // draws allowed per budgeted query before giving up
    int permutations = 1;        // orderings issued per keyword multiset
    ShareRanges ranges;
};

// Per topic, on its own stream derived from (master_seed, method, topic):
// draws a size in [4, 9], samples, skips insufficient draws and repeated
// keyword multisets, and stops at the budget. Topics run in parallel; the
// output order is the input topic order.
std::vector<SearchQuery> generate_queries(const std::vector<TieredKeywords>& topics, std::uint64_t master_seed,
                                          const GenerateOptions& options = {}, std::size_t parallelism = 1);

}  // namespace probegen::querygen
