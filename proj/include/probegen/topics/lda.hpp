#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/nlp/translate.hpp"
#include "probegen/topics/model.hpp"

namespace probegen::topics {

struct LdaParams {
    int K = 64;
    double alpha = 0.1;  // symmetric doc-topic prior
    double beta = 0.01;  // symmetric topic-word prior
    int iters = 1000;    // Gibbs sweeps
    std::uint64_t seed = 1;
};

class LdaModel {
public:
    int K = 0;
    double alpha = 0.0;
    double beta = 0.0;
    int iters = 0;
    std::uint64_t seed = 0;

    std::vector<std::string> vocab;                // index -> term, first-appearance order
    std::unordered_map<std::string, int> index;    // term -> index
    std::vector<std::vector<int>> topic_word;      // K x V counts
    std::vector<long long> topic_totals;           // K

    // Training documents' final state.
    std::vector<std::string> doc_urls;
    std::vector<std::vector<int>> doc_topic;       // D x K counts

    std::size_t V() const { return vocab.size(); }

    // Smoothed topic-word probability.
    double phi(int k, int w) const;

    // Training-time assignment of document d: argmax of its topic counts
    // (ties to the lowest id), scored by the smoothed doc-topic share.
    TopicAssignment training_assignment(std::size_t d) const;

    Json to_json() const;
    static LdaModel from_json(const Json& j);
};

// Called after every sweep with the sweep number (1-based).
using LdaObserver = std::function<void(int sweep, const LdaModel& model)>;

// Collapsed Gibbs sampling. Tokens of a bag are laid out in term order, and
// the chain is fully determined by (corpus order, params). Throws
// std::invalid_argument for an empty corpus, K < 2 or iters < 1.
LdaModel train_lda(const std::vector<nlp::EnglishBag>& corpus, const LdaParams& params,
                   const LdaObserver& observer = {});

// Folds an unseen document in with the topic-word distributions held fixed:
// maximum-likelihood EM over the document's topic mixture. The chosen topic is
// the argmax of that mixture (ties to the lowest id); scaling every count by
// the same factor gives the same result. Throws std::domain_error
// ("out-of-vocabulary document") when no term is in the vocabulary.
TopicAssignment assign_topic(const LdaModel& model, const nlp::EnglishBag& doc);

}  // namespace probegen::topics
