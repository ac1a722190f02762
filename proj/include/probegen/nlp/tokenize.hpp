#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/nlp/language.hpp"

namespace probegen::nlp {

struct TokenizedDoc {
    std::string url;
    LanguageTag lang;
    std::vector<std::string> tokens;
};

Json to_json(const TokenizedDoc& doc);
TokenizedDoc tokenized_doc_from_json(const Json& j);

// Per-language stopword lists, one lowercase word per line in `<code>.txt`.
class StopwordStore {
public:
    static StopwordStore load_dir(const std::filesystem::path& dir);

    void add(const std::string& lang, std::string word);
    bool has_language(std::string_view lang) const;
    bool contains(std::string_view lang, std::string_view lowered) const;

private:
    std::unordered_map<std::string, std::unordered_set<std::string>> lists_;
};

// Word segmentation for scripts written without spaces.
class Segmenter {
public:
    virtual ~Segmenter() = default;
    virtual std::vector<std::string> segment(std::string_view run, std::string_view lang) const = 0;
};

// Dictionary-based word breaking from ICU (Chinese, Japanese, Thai, Lao, Khmer, Burmese).
class IcuWordSegmenter : public Segmenter {
public:
    std::vector<std::string> segment(std::string_view run, std::string_view lang) const override;
};

// Splits text into lowercase tokens. Punctuation, symbols and emoji separate
// tokens; an apostrophe between two letters stays inside the token so elided
// stopwords ("c'est", "don't") can be matched. Non-stopword tokens with an
// apostrophe are split at it and one-letter clitics are dropped. Runs of
// unspaced scripts go to `segmenter`; without one they become code-point
// bigrams and a warning is logged.
std::vector<std::string> tokenize_text(std::string_view text, std::string_view lang, const StopwordStore& stopwords,
                                       const Segmenter* segmenter);

TokenizedDoc tokenize(std::string url, std::string_view text, const LanguageTag& lang,
                      const StopwordStore& stopwords, const Segmenter* segmenter);

}  // namespace probegen::nlp
