#include "probegen/nlp/translate.hpp"

#include <fstream>

#include "probegen/common/log.hpp"
#include "probegen/common/text.hpp"

namespace probegen::nlp {

int EnglishBag::total() const {
    int n = 0;
    for (const auto& [term, c] : counts) {
        n += c;
    }
    return n;
}

Json to_json(const EnglishBag& bag) {
    Json j;
    j["url"] = bag.url;
    Json counts = Json::object();
    for (const auto& [term, c] : bag.counts) {
        counts[term] = c;
    }
    j["counts"] = std::move(counts);
    return j;
}

EnglishBag english_bag_from_json(const Json& j) {
    EnglishBag bag;
    bag.url = j.at("url").get<std::string>();
    for (const auto& [term, c] : j.at("counts").items()) {
        int v = c.get<int>();
        if (v < 1) {
            throw Error("non-positive count for '" + term + "' in bag " + bag.url);
        }
        bag.counts[term] = v;
    }
    return bag;
}

namespace {

std::string key(std::string_view lang, std::string_view token) {
    std::string k(lang);
    k.push_back('\x1f');
    k.append(token);
    return k;
}

}  // namespace

FixtureTranslationClient::FixtureTranslationClient(const std::filesystem::path& tsv) {
    std::ifstream in(tsv);
    if (!in) {
        throw ConfigError("cannot read translation fixture " + tsv.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto a = line.find('\t');
        auto b = a == std::string::npos ? a : line.find('\t', a + 1);
        if (b == std::string::npos) {
            throw ConfigError(tsv.string() + ":" + std::to_string(line_no) + ": expected lang<TAB>token<TAB>english");
        }
        add(line.substr(0, a), line.substr(a + 1, b - a - 1), line.substr(b + 1));
    }
}

void FixtureTranslationClient::add(std::string lang, std::string token, std::string english) {
    table_[key(lang, text::to_lower(token))] = std::move(english);
}

std::string FixtureTranslationClient::translate(std::string_view lang, std::string_view token) {
    auto it = table_.find(key(lang, token));
    if (it == table_.end()) {
        throw ClientError("no recorded translation for " + std::string(lang) + ":" + std::string(token));
    }
    return it->second;
}

std::string CachingTranslator::translate(std::string_view lang, std::string_view token) {
    auto k = key(lang, token);
    {
        std::lock_guard lock(mutex_);
        auto it = cache_.find(k);
        if (it != cache_.end()) {
            ++hits_;
            return it->second;
        }
        ++calls_;
    }
    // The client call happens outside the lock; concurrent misses on the same
    // key may both reach the client, which is harmless for a pure mapping.
    std::string english = client_.translate(lang, token);
    std::lock_guard lock(mutex_);
    cache_.emplace(std::move(k), english);
    return english;
}

std::size_t CachingTranslator::client_calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
}

std::size_t CachingTranslator::cache_hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
}

EnglishBag translate_tokens(const TokenizedDoc& doc, CachingTranslator& translator, const TranslateOptions& options) {
    EnglishBag bag;
    bag.url = doc.url;
    const std::string& lang = doc.lang.code;
    const bool english_doc = lang == "en";
    std::size_t dropped = 0;
    for (const auto& token : doc.tokens) {
        std::string term;
        if (english_doc || (options.is_english && options.is_english(token, lang))) {
            term = text::normalize_term(token);
        } else {
            try {
                term = text::normalize_term(translator.translate(lang, token));
            } catch (const ClientError& e) {
                log().warn("dropping token '{}' ({}): {}", token, lang, e.what());
            }
        }
        if (term.empty()) {
            ++dropped;
            continue;
        }
        ++bag.counts[term];
    }
    if (!doc.tokens.empty() &&
        static_cast<double>(dropped) > options.max_drop_rate * static_cast<double>(doc.tokens.size())) {
        throw TranslationError("translation dropped " + std::to_string(dropped) + " of " +
                               std::to_string(doc.tokens.size()) + " tokens for " + doc.url);
    }
    return bag;
}

}  // namespace probegen::nlp
