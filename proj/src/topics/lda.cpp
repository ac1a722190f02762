#include "probegen/topics/lda.hpp"

#include <cmath>
#include <stdexcept>

#include "probegen/common/log.hpp"
#include "probegen/common/rng.hpp"

namespace probegen::topics {

double LdaModel::phi(int k, int w) const {
    return (topic_word[k][w] + beta) / (static_cast<double>(topic_totals[k]) + static_cast<double>(V()) * beta);
}

namespace {

int argmax_lowest(const std::vector<double>& v) {
    int best = 0;
    for (int k = 1; k < static_cast<int>(v.size()); ++k) {
        if (v[k] > v[best]) {
            best = k;
        }
    }
    return best;
}

}  // namespace

TopicAssignment LdaModel::training_assignment(std::size_t d) const {
    const auto& counts = doc_topic.at(d);
    long long n = 0;
    for (int c : counts) {
        n += c;
    }
    std::vector<double> theta(K);
    for (int k = 0; k < K; ++k) {
        theta[k] = (counts[k] + alpha) / (static_cast<double>(n) + K * alpha);
    }
    int best = argmax_lowest(theta);
    return {doc_urls.at(d), best, Method::lda, theta[best]};
}

Json LdaModel::to_json() const {
    Json j;
    j["K"] = K;
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["iters"] = iters;
    j["seed"] = seed;
    j["vocab"] = vocab;
    j["topic_word"] = topic_word;
    j["doc_urls"] = doc_urls;
    j["doc_topic"] = doc_topic;
    return j;
}

LdaModel LdaModel::from_json(const Json& j) {
    LdaModel m;
    m.K = j.at("K").get<int>();
    m.alpha = j.at("alpha").get<double>();
    m.beta = j.at("beta").get<double>();
    m.iters = j.at("iters").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.vocab = j.at("vocab").get<std::vector<std::string>>();
    m.topic_word = j.at("topic_word").get<std::vector<std::vector<int>>>();
    m.doc_urls = j.at("doc_urls").get<std::vector<std::string>>();
    m.doc_topic = j.at("doc_topic").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(m.topic_word.size()) != m.K) {
        throw std::invalid_argument("LDA model: topic_word has wrong row count");
    }
    m.topic_totals.assign(m.K, 0);
    for (int k = 0; k < m.K; ++k) {
        if (m.topic_word[k].size() != m.vocab.size()) {
            throw std::invalid_argument("LDA model: topic_word row size differs from vocabulary");
        }
        for (int c : m.topic_word[k]) {
            m.topic_totals[k] += c;
        }
    }
    for (std::size_t w = 0; w < m.vocab.size(); ++w) {
        m.index[m.vocab[w]] = static_cast<int>(w);
    }
    return m;
}

LdaModel train_lda(const std::vector<nlp::EnglishBag>& corpus, const LdaParams& params, const LdaObserver& observer) {
    if (corpus.empty()) {
        throw std::invalid_argument("LDA corpus is empty");
    }
    if (params.K < 2) {
        throw std::invalid_argument("LDA needs K >= 2");
    }
    if (params.iters < 1) {
        throw std::invalid_argument("LDA needs at least one sweep");
    }
    if (params.alpha <= 0 || params.beta <= 0) {
        throw std::invalid_argument("LDA priors must be positive");
    }
    if (static_cast<std::size_t>(params.K) > corpus.size()) {
        log().warn("LDA: K={} exceeds the number of documents ({})", params.K, corpus.size());
    }

    LdaModel m;
    m.K = params.K;
    m.alpha = params.alpha;
    m.beta = params.beta;
    m.iters = params.iters;
    m.seed = params.seed;

    // Token layout: per document, terms in bag order, each repeated count times.
    std::vector<std::vector<int>> words(corpus.size());
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        m.doc_urls.push_back(corpus[d].url);
        for (const auto& [term, count] : corpus[d].counts) {
            auto [it, inserted] = m.index.emplace(term, static_cast<int>(m.vocab.size()));
            if (inserted) {
                m.vocab.push_back(term);
            }
            words[d].insert(words[d].end(), count, it->second);
        }
    }
    const int K = m.K;
    const std::size_t V = m.vocab.size();
    const double vbeta = static_cast<double>(V) * m.beta;
    m.topic_word.assign(K, std::vector<int>(V, 0));
    m.topic_totals.assign(K, 0);
    m.doc_topic.assign(corpus.size(), std::vector<int>(K, 0));

    Rng rng(params.seed);
    std::vector<std::vector<int>> z(corpus.size());
    for (std::size_t d = 0; d < corpus.size(); ++d) {
        z[d].resize(words[d].size());
        for (std::size_t i = 0; i < words[d].size(); ++i) {
            int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(K)));
            z[d][i] = k;
            ++m.topic_word[k][words[d][i]];
            ++m.topic_totals[k];
            ++m.doc_topic[d][k];
        }
    }

    std::vector<double> cumulative(K);
    for (int sweep = 1; sweep <= params.iters; ++sweep) {
        for (std::size_t d = 0; d < corpus.size(); ++d) {
            auto& nd = m.doc_topic[d];
            for (std::size_t i = 0; i < words[d].size(); ++i) {
                const int w = words[d][i];
                int k = z[d][i];
                --m.topic_word[k][w];
                --m.topic_totals[k];
                --nd[k];
                double total = 0.0;
                for (int t = 0; t < K; ++t) {
                    total += (nd[t] + m.alpha) * (m.topic_word[t][w] + m.beta) /
                             (static_cast<double>(m.topic_totals[t]) + vbeta);
                    cumulative[t] = total;
                }
                const double u = rng.uniform01() * total;
                k = 0;
                while (k < K - 1 && cumulative[k] <= u) {
                    ++k;
                }
                z[d][i] = k;
                ++m.topic_word[k][w];
                ++m.topic_totals[k];
                ++nd[k];
            }
        }
        if (observer) {
            observer(sweep, m);
        }
    }
    return m;
}

TopicAssignment assign_topic(const LdaModel& model, const nlp::EnglishBag& doc) {
    std::vector<std::pair<int, double>> terms;  // vocab index, count
    double n = 0.0;
    for (const auto& [term, count] : doc.counts) {
        auto it = model.index.find(term);
        if (it != model.index.end() && count > 0) {
            terms.emplace_back(it->second, static_cast<double>(count));
            n += count;
        }
    }
    if (terms.empty()) {
        throw std::domain_error("out-of-vocabulary document: " + doc.url);
    }
    const int K = model.K;
    std::vector<std::vector<double>> phi(terms.size(), std::vector<double>(K));
    for (std::size_t i = 0; i < terms.size(); ++i) {
        for (int k = 0; k < K; ++k) {
            phi[i][k] = model.phi(k, terms[i].first);
        }
    }
    std::vector<double> theta(K, 1.0 / K);
    std::vector<double> next(K);
    for (int iter = 0; iter < 500; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < terms.size(); ++i) {
            double z = 0.0;
            for (int k = 0; k < K; ++k) {
                z += theta[k] * phi[i][k];
            }
            for (int k = 0; k < K; ++k) {
                next[k] += terms[i].second * theta[k] * phi[i][k] / z;
            }
        }
        double delta = 0.0;
        for (int k = 0; k < K; ++k) {
            next[k] /= n;
            delta = std::max(delta, std::abs(next[k] - theta[k]));
        }
        theta.swap(next);
        if (delta < 1e-12) {
            break;
        }
    }
    int best = argmax_lowest(theta);
    return {doc.url, best, Method::lda, theta[best]};
}

}  // namespace probegen::topics
