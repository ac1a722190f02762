#include "probegen/querygen/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "probegen/common/log.hpp"
#include "probegen/common/parallel.hpp"

namespace probegen::querygen {

std::vector<std::string> SearchQuery::terms() const {
    std::vector<std::string> out;
    for (const auto& k : keywords) {
        out.push_back(k.term);
    }
    return out;
}

Json to_json(const SearchQuery& q) {
    Json j;
    j["query_id"] = q.query_id;
    j["topic_id"] = q.topic_id;
    j["method"] = std::string(to_string(q.method));
    Json terms = Json::array(), tiers = Json::array(), ranks = Json::array();
    for (const auto& k : q.keywords) {
        terms.push_back(k.term);
        tiers.push_back(k.tier);
        ranks.push_back(k.rank);
    }
    j["keywords"] = std::move(terms);
    j["keyword_tiers"] = std::move(tiers);
    j["keyword_ranks"] = std::move(ranks);
    j["tier_histogram"] = q.tier_histogram;
    j["seed_trace"] = q.seed_trace;
    return j;
}

SearchQuery search_query_from_json(const Json& j) {
    SearchQuery q;
    q.query_id = j.at("query_id").get<std::string>();
    q.topic_id = j.at("topic_id").get<int>();
    q.method = parse_query_method(j.at("method").get<std::string>());
    const auto& terms = j.at("keywords");
    const auto& tiers = j.at("keyword_tiers");
    const auto& ranks = j.at("keyword_ranks");
    if (terms.size() != tiers.size() || terms.size() != ranks.size()) {
        throw std::invalid_argument("keyword, tier and rank lists differ in length");
    }
    for (std::size_t i = 0; i < terms.size(); ++i) {
        q.keywords.push_back({terms[i].get<std::string>(), tiers[i].get<int>(), ranks[i].get<int>()});
        int t = q.keywords.back().tier;
        if (t < 1 || t > 4) {
            throw std::invalid_argument("keyword tier out of range");
        }
        ++q.tier_histogram[t - 1];
    }
    if (j.contains("seed_trace")) {
        q.seed_trace = j["seed_trace"];
    }
    return q;
}

std::array<int, 4> tier_counts(const std::array<double, 4>& shares, int size,
                               const std::array<std::size_t, 4>& available) {
    std::array<double, 4> target{};
    double head = shares[0] + shares[1] + shares[2];
    double scale = head > 1.0 ? 1.0 / head : 1.0;
    for (int i = 0; i < 3; ++i) {
        target[i] = shares[i] * scale * size;
    }
    target[3] = std::max(0.0, size - target[0] - target[1] - target[2]);

    std::array<int, 4> counts{};
    int assigned = 0;
    for (int i = 0; i < 4; ++i) {
        counts[i] = static_cast<int>(std::floor(target[i]));
        assigned += counts[i];
    }
    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return target[a] - counts[a] > target[b] - counts[b];
    });
    for (int k = 0; assigned < size; k = (k + 1) % 4) {
        ++counts[order[k]];
        ++assigned;
    }

    std::array<int, 4> cap{};
    for (int i = 0; i < 4; ++i) {
        cap[i] = static_cast<int>(std::min<std::size_t>(available[i], static_cast<std::size_t>(size)));
    }
    cap[0] = std::min(cap[0], kMaxTier1);
    int overflow = 0;
    for (int i = 0; i < 4; ++i) {
        if (counts[i] > cap[i]) {
            overflow += counts[i] - cap[i];
            counts[i] = cap[i];
        }
    }
    for (int i = 3; i >= 0 && overflow > 0; --i) {
        int room = cap[i] - counts[i];
        int move = std::min(room, overflow);
        counts[i] += move;
        overflow -= move;
    }
    if (overflow > 0) {
        throw InsufficientKeywords("insufficient keywords for a query of size " + std::to_string(size));
    }
    return counts;
}

SearchQuery sample_query(const TieredKeywords& tiers, Rng& rng, int size, const ShareRanges& ranges) {
    if (size < kMinQuerySize || size > kMaxQuerySize) {
        throw std::invalid_argument("query size must be in [4, 9]");
    }
    std::uint64_t draws_before = rng.draws();
    std::array<double, 4> shares{};
    shares[0] = rng.uniform(ranges.t1_lo, ranges.t1_hi);
    shares[1] = rng.uniform(ranges.t2_lo, ranges.t2_hi);
    shares[2] = rng.uniform(ranges.t3_lo, ranges.t3_hi);
    shares[3] = std::max(0.0, 1.0 - shares[0] - shares[1] - shares[2]);
    std::array<std::size_t, 4> available{};
    for (int i = 0; i < 4; ++i) {
        available[i] = tiers.tiers[i].size();
    }
    auto counts = tier_counts(shares, size, available);

    SearchQuery q;
    q.topic_id = tiers.topic_id;
    q.method = tiers.method;
    for (int t = 0; t < 4; ++t) {
        std::vector<std::size_t> idx(tiers.tiers[t].size());
        std::iota(idx.begin(), idx.end(), 0);
        // Partial Fisher-Yates: the first counts[t] slots are the sample.
        for (int k = 0; k < counts[t]; ++k) {
            std::size_t j = k + static_cast<std::size_t>(rng.below(idx.size() - k));
            std::swap(idx[k], idx[j]);
            const auto& term = tiers.tiers[t][idx[k]];
            q.keywords.push_back({term.term, t + 1, term.rank});
        }
        q.tier_histogram[t] = counts[t];
    }
    rng.shuffle(std::span(q.keywords));
    q.seed_trace = Json{{"stream_seed", rng.seed()},
                        {"draw_index", draws_before},
                        {"size", size},
                        {"shares", shares}};
    return q;
}

namespace {

std::vector<SearchQuery> topic_queries(const TieredKeywords& tiers, std::uint64_t master_seed,
                                       const GenerateOptions& options) {
    std::vector<SearchQuery> out;
    if (options.per_topic_budget < 1) {
        return out;
    }
    Rng rng(derive_seed(master_seed, to_string(tiers.method), static_cast<std::uint64_t>(tiers.topic_id)));
    std::set<std::vector<std::string>> seen;
    int insufficient = 0;
    int attempts = options.per_topic_budget * std::max(1, options.attempts_per_query);
    for (int a = 0; a < attempts && static_cast<int>(out.size()) < options.per_topic_budget; ++a) {
        int size = static_cast<int>(rng.between(kMinQuerySize, kMaxQuerySize));
        SearchQuery q;
        try {
            q = sample_query(tiers, rng, size, options.ranges);
        } catch (const InsufficientKeywords&) {
            ++insufficient;
            continue;
        }
        auto multiset = q.terms();
        std::sort(multiset.begin(), multiset.end());
        if (!seen.insert(multiset).second) {
            continue;
        }
        std::set<std::vector<std::string>> orders;
        for (int p = 0; p < std::max(1, options.permutations) && static_cast<int>(out.size()) < options.per_topic_budget;
             ++p) {
            if (p > 0) {
                rng.shuffle(std::span(q.keywords));
            }
            if (!orders.insert(q.terms()).second) {
                continue;
            }
            q.query_id = std::string(to_string(tiers.method)) + "-t" + std::to_string(tiers.topic_id) + "-q" +
                         std::to_string(out.size());
            out.push_back(q);
        }
    }
    if (insufficient > 0) {
        log().warn("{} topic {}: {} draws skipped for insufficient keywords", to_string(tiers.method),
                   tiers.topic_id, insufficient);
    }
    return out;
}

}  // namespace

std::vector<SearchQuery> generate_queries(const std::vector<TieredKeywords>& topics, std::uint64_t master_seed,
                                          const GenerateOptions& options, std::size_t parallelism) {
    std::vector<std::vector<SearchQuery>> per_topic(topics.size());
    parallel_for(topics.size(), parallelism,
                 [&](std::size_t i) { per_topic[i] = topic_queries(topics[i], master_seed, options); });
    std::vector<SearchQuery> out;
    for (auto& list : per_topic) {
        std::move(list.begin(), list.end(), std::back_inserter(out));
    }
    return out;
}

}  // namespace probegen::querygen
