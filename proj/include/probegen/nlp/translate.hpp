#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "probegen/common/error.hpp"
#include "probegen/common/jsonl.hpp"
#include "probegen/nlp/tokenize.hpp"

namespace probegen::nlp {

struct EnglishBag {
    std::string url;
    std::map<std::string, int> counts;  // lowercase term -> count >= 1

    int total() const;
};

Json to_json(const EnglishBag& bag);
EnglishBag english_bag_from_json(const Json& j);

class TranslationError : public Error {
public:
    using Error::Error;
};

// {lang, token} -> English. Implementations must allow concurrent calls and
// throw ClientError when a token cannot be translated.
class TranslationClient {
public:
    virtual ~TranslationClient() = default;
    virtual std::string translate(std::string_view lang, std::string_view token) = 0;
};

// Recorded translations, TSV lines "lang<TAB>token<TAB>english" ('#' comments).
class FixtureTranslationClient : public TranslationClient {
public:
    explicit FixtureTranslationClient(const std::filesystem::path& tsv);
    FixtureTranslationClient() = default;

    void add(std::string lang, std::string token, std::string english);
    std::string translate(std::string_view lang, std::string_view token) override;

private:
    std::unordered_map<std::string, std::string> table_;
};

// Memoizes successful translations per (lang, token). Failures are not cached.
class CachingTranslator {
public:
    explicit CachingTranslator(TranslationClient& client) : client_(client) {}

    std::string translate(std::string_view lang, std::string_view token);

    std::size_t client_calls() const;
    std::size_t cache_hits() const;

private:
    TranslationClient& client_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::string> cache_;
    std::size_t calls_ = 0;
    std::size_t hits_ = 0;
};

struct TranslateOptions {
    // A document fails when more than this share of its tokens is dropped.
    double max_drop_rate = 0.5;
    // Optional word-level check for English tokens inside non-English
    // documents (loan words). Tokens it accepts are not sent for translation.
    std::function<bool(std::string_view token, std::string_view lang)> is_english;
};

// Tokens of English documents pass through; other tokens are translated one
// by one. A translation is normalized (lowercase, trimmed, inner whitespace
// collapsed) and kept whole even when it has several words. Throws
// TranslationError when the drop rate exceeds the limit.
EnglishBag translate_tokens(const TokenizedDoc& doc, CachingTranslator& translator,
                            const TranslateOptions& options = {});

}  // namespace probegen::nlp
